"""
Minimal project settings so the app runs stand-alone through manage.py.
"""
from gaudinlab.settings import *  # noqa: F401,F403

SECRET_KEY = 'gaudinlab-local-only'
DEBUG = False
USE_TZ = True

INSTALLED_APPS = [
    'rest_framework',
    'gaudinlab',
]

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {'format': '%(asctime)s %(levelname)s %(name)s %(message)s'},
    },
    'handlers': {
        'console': {'class': 'logging.StreamHandler', 'formatter': 'simple'},
    },
    'loggers': {
        'gaudinlab': {'handlers': ['console'], 'level': 'WARNING'},
    },
}
