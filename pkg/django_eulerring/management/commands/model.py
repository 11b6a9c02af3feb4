from django.core.management.base import BaseCommand, CommandError

from django_eulerring.cli import (
    EXIT_INVALID_SPEC,
    EXIT_VERIFICATION_FAILED,
    SpaceSpec,
    add_space_arguments,
    model_dump,
    output_format,
    render_model,
)
from django_eulerring.exceptions import EulerRingException, InvalidSpaceSpec


class Command(BaseCommand):
    help = "Print the universal relative Sullivan model of a fibre"

    def add_arguments(self, parser):
        add_space_arguments(parser)
        parser.add_argument(
            "--max-degree",
            type=int,
            default=None,
            help="cohomology bound (default: 4 x fibre dimension)",
        )

    def handle(self, *args, **options):
        try:
            fmt = output_format(options["output_format"])
            space = SpaceSpec.parse(options["family"], options["n"], options["dims"]).build()
        except InvalidSpaceSpec as e:
            raise CommandError(str(e), returncode=EXIT_INVALID_SPEC)
        try:
            dump = model_dump(space, options["max_degree"])
        except EulerRingException as e:
            raise CommandError(str(e), returncode=EXIT_VERIFICATION_FAILED)
        self.stdout.write(render_model(dump, fmt))
