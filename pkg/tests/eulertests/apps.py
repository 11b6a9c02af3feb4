from django.apps import AppConfig

app_name = "eulertests"


class EulertestsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "eulertests"
