"""
Shared plumbing of the laboratory commands: serializer validation, one-line
diagnostics and deterministic JSON output.
"""
import json

from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from core.serializers import flatten_errors
from core.services.errors import LabError


def dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)


class LabCommand(BaseCommand):
    serializer_class = None

    def add_json_flag(self, parser):
        parser.add_argument("--json", action="store_true", help="Emit the machine-readable JSON payload.")

    def validated(self, **data):
        """A valid serializer for ``data`` or a CommandError naming what is wrong."""
        ser = self.serializer_class(data={k: v for k, v in data.items() if v is not None})
        if not ser.is_valid():
            raise CommandError(flatten_errors(ser.errors))
        return ser

    def compute(self, func, *args, **kwargs):
        try:
            return func(*args, **kwargs)
        except serializers.ValidationError as exc:
            raise CommandError(flatten_errors(exc.detail))
        except LabError as exc:
            raise CommandError(str(exc))

    def emit(self, payload: dict, as_json: bool):
        if as_json:
            try:
                self.stdout.write(dump_json(payload))
            except ValueError:
                raise CommandError("The result holds a non-finite number and has no JSON form.")
        else:
            self.stdout.write(self.render_text(payload))

    def render_text(self, payload: dict) -> str:
        return "\n".join(f"{key}: {value}" for key, value in payload.items())
