"""Command-line front end: forge certificates, verify them, sweep bidegree
ranges, and build standalone plane maps.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 retry
exhaustion. The default prime can be overridden per invocation with --prime
or globally with the CREMONA3_PRIME environment variable (read once at
startup; the flag wins).
"""

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .certificate import load_certificate, serialize_certificate, verification_failures
from .errors import ForgeExhausted, MalformedCertificate, OutOfRange
from .field import DEFAULT_PRIME, PrimeField
from .plane import forge_plane
from .space import forge, plan_bidegree

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_EXHAUSTED = 3

PRIME_ENV = "CREMONA3_PRIME"


def _err(message):
    print(f"cremona3: {message}", file=sys.stderr)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cremona3",
        description="Construct Cremona transformations of P^3 with prescribed "
        "bidegree (d, e) and certify the bidegree by exact intersection counts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_retries=True):
        p.add_argument("--seed", type=int, default=0,
                       help="base seed for all randomness (default 0)")
        p.add_argument("--prime", type=int, default=None,
                       help=f"field modulus (default {DEFAULT_PRIME}, or ${PRIME_ENV})")
        if with_retries:
            p.add_argument("--retries", type=int, default=8,
                           help="attempts before giving up (default 8)")

    forge_p = sub.add_parser(
        "forge", help="construct and certify one transformation of bidegree (d, e)")
    forge_p.add_argument("-d", dest="d", type=int, required=True,
                         help="degree of the transformation (d >= 2)")
    forge_p.add_argument("-e", dest="e", type=int, required=True,
                         help="degree of the inverse (d <= e <= d^2)")
    add_common(forge_p)
    forge_p.add_argument("-o", "--out", default=None,
                         help="write the certificate to this file (default stdout)")
    forge_p.set_defaults(func=cmd_forge, needs_prime=True)

    verify_p = sub.add_parser("verify", help="re-check a certificate from its stored data")
    verify_p.add_argument("file", help="certificate file, or - for stdin")
    verify_p.set_defaults(func=cmd_verify, needs_prime=False)

    sweep_p = sub.add_parser(
        "sweep", help="forge and verify every bidegree (d, e) for e in [d, d^2]")
    sweep_p.add_argument("-d", dest="d", type=int, required=True)
    sweep_p.add_argument("--e-min", type=int, default=None, help="restrict the range (default d)")
    sweep_p.add_argument("--e-max", type=int, default=None, help="restrict the range (default d^2)")
    sweep_p.add_argument("--jobs", type=int, default=1, help="forge this many bidegrees in parallel")
    add_common(sweep_p)
    sweep_p.add_argument("--out", default=None, metavar="DIR",
                         help="also write one certificate file per bidegree")
    sweep_p.set_defaults(func=cmd_sweep, needs_prime=True)

    plane_p = sub.add_parser(
        "plane", help="build and certify a random plane de Jonquieres map of degree r")
    plane_p.add_argument("-r", dest="r", type=int, required=True,
                         help="degree of the plane map (r >= 2)")
    add_common(plane_p)
    plane_p.add_argument("-o", "--out", default=None,
                         help="write the certificate to this file (default stdout)")
    plane_p.set_defaults(func=cmd_plane, needs_prime=True)
    return parser


def _resolve_prime(args):
    prime = args.prime
    if prime is None:
        raw = os.environ.get(PRIME_ENV)
        if raw is not None:
            try:
                prime = int(raw)
            except ValueError:
                raise OutOfRange(f"{PRIME_ENV}={raw!r} is not an integer") from None
    if prime is None:
        prime = DEFAULT_PRIME
    try:
        PrimeField(prime)
    except ValueError as exc:
        raise OutOfRange(str(exc)) from None
    return prime


def _write_output(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def cmd_forge(args, prime):
    try:
        cert = forge(args.d, args.e, seed=args.seed, prime=prime, retries=args.retries)
    except ForgeExhausted as exc:
        _err(str(exc))
        for line in exc.transcript:
            print(f"  {line}", file=sys.stderr)
        return EXIT_EXHAUSTED
    _write_output(serialize_certificate(cert), args.out)
    print(
        f"verified bidegree ({cert.d}, {cert.e}) case {cert.recipe.tag} "
        f"over F_{prime} in {cert.attempts} attempt(s)",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_verify(args, prime):
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, "r", encoding="utf-8") as handle:
                text = handle.read()
    except OSError as exc:
        _err(f"cannot read {args.file}: {exc}")
        return EXIT_INVALID_INPUT
    try:
        data = load_certificate(text)
    except MalformedCertificate as exc:
        _err(f"malformed certificate: {exc}")
        return EXIT_INVALID_INPUT
    failures = verification_failures(data)
    if failures:
        print("certificate FAILS verification:")
        for failure in failures:
            print(f"  - {failure}")
        return EXIT_VERIFY_FAILED
    if data["kind"] == "space":
        print(f"certificate verifies: bidegree ({data['d']}, {data['e']}) over F_{data['prime']}")
    else:
        print(f"certificate verifies: plane map of degree {data['r']} over F_{data['prime']}")
    return EXIT_OK


def _sweep_task(params):
    d, e, seed, prime, retries = params
    start = time.perf_counter()
    try:
        cert = forge(d, e, seed=seed, prime=prime, retries=retries)
    except ForgeExhausted as exc:
        elapsed = time.perf_counter() - start
        return (e, plan_bidegree(d, e).tag, "exhausted", retries, elapsed, None, str(exc))
    elapsed = time.perf_counter() - start
    return (e, cert.recipe.tag, "verified", cert.attempts, elapsed,
            serialize_certificate(cert), None)


def cmd_sweep(args, prime):
    d = args.d
    if d < 2:
        _err(f"need d >= 2, got {d}")
        return EXIT_INVALID_INPUT
    e_min = args.e_min if args.e_min is not None else d
    e_max = args.e_max if args.e_max is not None else d * d
    if e_min > e_max or e_min < d or e_max > d * d:
        _err(f"empty or invalid range [{e_min}, {e_max}] for d = {d} (need d <= e <= d^2)")
        return EXIT_INVALID_INPUT
    if args.jobs < 1:
        _err(f"need --jobs >= 1, got {args.jobs}")
        return EXIT_INVALID_INPUT
    if args.out is not None:
        os.makedirs(args.out, exist_ok=True)

    tasks = [(d, e, args.seed, prime, args.retries) for e in range(e_min, e_max + 1)]
    if args.jobs == 1:
        results = [_sweep_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_task, tasks))

    rows = []
    failed = []
    any_exhausted = False
    for e, tag, status, attempts, elapsed, text, error in results:
        if status == "verified":
            if not verification_failures(load_certificate(text)):
                if args.out is not None:
                    path = os.path.join(args.out, f"cremona3-d{d}-e{e}.json")
                    with open(path, "w", encoding="utf-8") as handle:
                        handle.write(text)
            else:
                status = "verify-failed"
                failed.append((d, e, "round-trip verification failed"))
        else:
            any_exhausted = True
            failed.append((d, e, error))
        rows.append((e, tag, status, attempts, elapsed))

    e_w = max(len("e"), *(len(str(r[0])) for r in rows))
    tag_w = max(len("case"), *(len(r[1]) for r in rows))
    st_w = max(len("status"), *(len(r[2]) for r in rows))
    print(f"sweep d = {d}, e in [{e_min}, {e_max}], prime {prime}, seed {args.seed}")
    print(f"{'e':>{e_w}}  {'case':<{tag_w}}  {'status':<{st_w}}  attempts     time")
    for e, tag, status, attempts, elapsed in rows:
        print(f"{e:>{e_w}}  {tag:<{tag_w}}  {status:<{st_w}}  {attempts:>8}  {elapsed:6.2f}s")
    if failed:
        for d_f, e_f, reason in failed:
            _err(f"bidegree ({d_f}, {e_f}) failed: {reason}")
        return EXIT_EXHAUSTED if any_exhausted else EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_plane(args, prime):
    try:
        cert = forge_plane(args.r, seed=args.seed, prime=prime, retries=args.retries)
    except ForgeExhausted as exc:
        _err(str(exc))
        for line in exc.transcript:
            print(f"  {line}", file=sys.stderr)
        return EXIT_EXHAUSTED
    _write_output(serialize_certificate(cert), args.out)
    print(
        f"verified plane de Jonquieres map of degree {cert.r} over F_{prime} "
        f"in {cert.attempts} attempt(s)",
        file=sys.stderr,
    )
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID_INPUT
    prime = None
    if args.needs_prime:
        try:
            prime = _resolve_prime(args)
        except OutOfRange as exc:
            _err(str(exc))
            return EXIT_INVALID_INPUT
    try:
        return args.func(args, prime)
    except OutOfRange as exc:
        _err(str(exc))
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
