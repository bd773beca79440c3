import os
from celery import Celery
from django.conf import settings

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'apntri.settings')

app = Celery('apntri')

# CELERY_* entries in apntri/settings.py; eager unless a broker is configured
app.config_from_object('django.conf:settings', namespace='CELERY')

# kernel chunks are long and uneven, one at a time per worker process
app.conf.worker_prefetch_multiplier = 1

app.autodiscover_tasks(lambda: settings.INSTALLED_APPS)
