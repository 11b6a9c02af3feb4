from django.apps import AppConfig


class DjangoEulerringConfig(AppConfig):
    name = "django_eulerring"
    verbose_name = "Euler rings of universal fibrations"
