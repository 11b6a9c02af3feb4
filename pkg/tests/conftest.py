"""Configure the Django test project so pytest can collect the test suite."""
import os
import sys

import django

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "django_eulerring_test.settings")
django.setup()
