import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "gaudinlab.project_settings")
django.setup()
