from django.core.management.base import BaseCommand, CommandError

from django_eulerring.cli import EXIT_INVALID_SPEC, EXIT_VERIFICATION_FAILED, output_format, render_json
from django_eulerring.exceptions import InvalidSpaceSpec
from django_eulerring.suite import FAULTS, run_suite


class Command(BaseCommand):
    help = "Run the acceptance suite and report the first counterexample"

    def add_arguments(self, parser):
        parser.add_argument("--suite", default="paper", choices=["paper"])
        parser.add_argument(
            "--only",
            action="append",
            default=None,
            help="restrict to a key such as cpn:3 or a family such as odd-product (repeatable)",
        )
        parser.add_argument("--inject-fault", default=None, choices=list(FAULTS))
        parser.add_argument("--seed", type=int, default=None)
        parser.add_argument("--format", dest="output_format", default=None)
        parser.add_argument("--failfast", action="store_true", help="stop at the first failing check")

    def handle(self, *args, **options):
        try:
            fmt = output_format(options["output_format"])
            result = run_suite(
                only=options["only"],
                inject_fault=options["inject_fault"],
                seed=options["seed"],
                stop_at_first_failure=options["failfast"],
            )
        except InvalidSpaceSpec as e:
            raise CommandError(str(e), returncode=EXIT_INVALID_SPEC)
        if fmt == "json":
            self.stdout.write(render_json(result.to_json()))
        else:
            for check in result.results:
                self.stdout.write(str(check))
        failure = result.first_failure
        if failure is not None:
            raise CommandError(
                f"{failure.key} / {failure.name}: {failure.counterexample}",
                returncode=EXIT_VERIFICATION_FAILED,
            )
        self.stdout.write(self.style.SUCCESS(f"{len(result.results)} checks passed (seed {result.seed})"))
