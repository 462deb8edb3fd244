"""
WSGI entry point of the wcolab service (``gunicorn wcolab.wsgi``).
"""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "wcolab.settings")

application = get_wsgi_application()
