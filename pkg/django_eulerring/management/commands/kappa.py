from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from django_eulerring.cli import (
    EXIT_INVALID_SPEC,
    EXIT_VERIFICATION_FAILED,
    SpaceSpec,
    add_space_arguments,
    output_format,
    render_kappas,
    render_report,
)
from django_eulerring.eulerring import euler_ring_report, kappa_table
from django_eulerring.exceptions import EulerRingException, InvalidSpaceSpec


class Command(BaseCommand):
    help = "Compute the kappa classes of a fibre, optionally with the Euler ring report"

    def add_arguments(self, parser):
        add_space_arguments(parser)
        parser.add_argument("--max-index", type=int, default=4, help="largest kappa index")
        parser.add_argument("--seed", type=int, default=None, help="seed for evaluation points")
        parser.add_argument(
            "--report",
            action="store_true",
            help="add relations, independence certificate and presentation",
        )

    def handle(self, *args, **options):
        seed = options["seed"]
        if seed is None:
            seed = getattr(settings, "EULERRING_SEED", 20240712)
        try:
            fmt = output_format(options["output_format"])
            space = SpaceSpec.parse(options["family"], options["n"], options["dims"]).build()
            if options["max_index"] < 1:
                raise InvalidSpaceSpec("--max-index must be >= 1", options["max_index"])
        except InvalidSpaceSpec as e:
            raise CommandError(str(e), returncode=EXIT_INVALID_SPEC)
        try:
            if options["report"]:
                output = render_report(euler_ring_report(space, options["max_index"], seed), fmt)
            else:
                output = render_kappas(space, kappa_table(space, options["max_index"]), fmt, seed)
        except EulerRingException as e:
            raise CommandError(str(e), returncode=EXIT_VERIFICATION_FAILED)
        self.stdout.write(output)
