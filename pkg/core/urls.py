# core/urls.py
from django.urls import path
from rest_framework.routers import DefaultRouter
from rest_framework.authtoken.views import obtain_auth_token

from .views import (
    CheckRunViewSet,
    KernelEvalView,
    LemmaMoveView,
    PublicConfigAPIView,
    SpaceInfoView,
)

# DRF Router
router = DefaultRouter()
router.register(r'checks', CheckRunViewSet, basename='check')

urlpatterns = [
    # --- Auth ---
    path('auth/login/', obtain_auth_token, name='api_token_auth'),

    # --- Public config (no authentication) ---
    path('public/config/', PublicConfigAPIView.as_view(), name='public_config'),

    # --- Stateless computations ---
    path('spaces/info/', SpaceInfoView.as_view(), name='space_info'),
    path('kernels/eval/', KernelEvalView.as_view(), name='kernel_eval'),
    path('lemma/move/', LemmaMoveView.as_view(), name='lemma_move'),
]

urlpatterns += router.urls
