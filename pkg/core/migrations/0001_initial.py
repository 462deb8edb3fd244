# Generated by Django 5.2.6 on 2026-10-19 10:12

import django.core.validators
import django.db.models.deletion
from django.conf import settings
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
        migrations.swappable_dependency(settings.AUTH_USER_MODEL),
    ]

    operations = [
        migrations.CreateModel(
            name='CheckRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('space_spec', models.CharField(max_length=255)),
                ('phi', models.CharField(max_length=255)),
                ('f', models.CharField(max_length=255)),
                ('N', models.PositiveIntegerField(validators=[django.core.validators.MinValueValidator(2)])),
                ('k', models.PositiveIntegerField(validators=[django.core.validators.MinValueValidator(1)])),
                ('tol', models.FloatField()),
                ('theoretical', models.CharField(choices=[('UnitaryExpected', 'Unitary expected'), ('NotCoisometricExpected', 'Not co-isometric expected'), ('Indeterminate', 'Indeterminate')], db_index=True, max_length=32)),
                ('numerical', models.CharField(choices=[('PassUnitary', 'Pass (unitary)'), ('FailCoisometry', 'Fail (co-isometry)'), ('Inconclusive', 'Inconclusive')], db_index=True, max_length=32)),
                ('agreement', models.CharField(choices=[('true', 'Agree'), ('false', 'Disagree'), ('n/a', 'No prediction')], db_index=True, max_length=8)),
                ('report', models.JSONField(default=dict)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('owner', models.ForeignKey(blank=True, null=True, on_delete=django.db.models.deletion.CASCADE, related_name='check_runs', to=settings.AUTH_USER_MODEL)),
            ],
            options={
                'ordering': ['-created_at', '-id'],
            },
        ),
    ]
