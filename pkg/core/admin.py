# core/admin.py
from django.contrib import admin
from .models import CheckRun


@admin.register(CheckRun)
class CheckRunAdmin(admin.ModelAdmin):
    list_display = ("space_spec", "phi", "f", "N", "k", "theoretical", "numerical", "agreement", "created_at")
    list_filter = ("theoretical", "numerical", "agreement")
    search_fields = ("space_spec", "phi", "f")
    date_hierarchy = "created_at"
    readonly_fields = ("theoretical", "numerical", "agreement", "report", "created_at")
