"""Command-line front end.

Verbs: encrypt, decrypt, analyze, difftest, bench, keyspace.  Exit codes:
0 success, 2 usage problems, 3 image parse errors, 4 key errors,
5 trajectory divergence.
"""

import argparse
import sys
import time

from . import analysis, bench
from .cipher import key_space_report, load_key_file, parse_key
from .errors import IntegrationDivergenceError, InvalidKeyError, PgmFormatError
from .imageio import read_pgm, write_pgm

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_KEY = 4
EXIT_INTEGRATION = 5


class _UsageError(Exception):
    pass


def _add_key_options(parser):
    parser.add_argument("--key", help="inline key `x y z mu`")
    parser.add_argument("--key-file", help="path to a file holding `x y z mu`")


def _resolve_key(args):
    if args.key and args.key_file:
        print("warning: both --key and --key-file given, using --key", file=sys.stderr)
    if args.key:
        return parse_key(args.key)
    if args.key_file:
        try:
            return load_key_file(args.key_file)
        except OSError as exc:
            raise _UsageError(f"cannot read key file: {exc}") from exc
    raise _UsageError("a key is required (--key or --key-file)")


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_encrypt(args):
    from .cipher import encrypt

    key = _resolve_key(args)
    img = read_pgm(args.input)
    t0 = time.perf_counter()
    out = encrypt(img, key)
    dt = time.perf_counter() - t0
    write_pgm(out, args.output)
    print(f"encrypted {img.width}x{img.height} in {dt:.3f} s")
    return EXIT_OK


def _cmd_decrypt(args):
    from .cipher import decrypt

    key = _resolve_key(args)
    img = read_pgm(args.input)
    t0 = time.perf_counter()
    out = decrypt(img, key)
    dt = time.perf_counter() - t0
    write_pgm(out, args.output)
    print(f"decrypted {img.width}x{img.height} in {dt:.3f} s")
    return EXIT_OK


def _cmd_analyze(args):
    img = read_pgm(args.input)
    ref = read_pgm(args.ref) if args.ref else None
    report = analysis.analyze(img, ref)
    text = report.to_csv() if args.format == "csv" else report.to_text()
    _emit(text, args.out)
    return EXIT_OK


def _cmd_difftest(args):
    key = _resolve_key(args)
    img = read_pgm(args.input)
    mean_npcr, mean_uaci = analysis.differential_test(
        img, key, trials=args.trials, seed=args.seed
    )
    _emit(f"npcr,{mean_npcr:.6f}\nuaci,{mean_uaci:.6f}\n", args.out)
    return EXIT_OK


def _cmd_bench(args):
    key = _resolve_key(args) if (args.key or args.key_file) else bench.DEFAULT_KEY
    backends = ("numba", "python") if args.backend == "both" else (args.backend,)
    rows = bench.run(
        sizes=tuple(args.sizes),
        reps=args.reps,
        key=key,
        backends=backends,
        seed=args.seed,
    )
    _emit(bench.to_csv(rows), args.out)
    return EXIT_OK


def _cmd_keyspace(args):
    cardinality = key_space_report()
    print("4 components x 15 significant decimal digits each")
    print(f"key space: (10^15)^4 = 10^60 = {cardinality}")
    print("comfortably above the 2^100 brute-force threshold (~1.3e30)")
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="pdcipher",
        description="Permutation-diffusion gray-image cipher and its evaluation suite",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("encrypt", help="encrypt a binary PGM image")
    p.add_argument("input")
    p.add_argument("output")
    _add_key_options(p)
    p.set_defaults(handler=_cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a binary PGM image")
    p.add_argument("input")
    p.add_argument("output")
    _add_key_options(p)
    p.set_defaults(handler=_cmd_decrypt)

    p = sub.add_parser("analyze", help="entropy/correlation/histogram report")
    p.add_argument("input")
    p.add_argument("--ref", help="second image for NPCR/UACI")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("difftest", help="mean NPCR/UACI over one-pixel perturbations")
    p.add_argument("input")
    _add_key_options(p)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=None, help="RNG seed for positions")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_difftest)

    p = sub.add_parser("bench", help="encrypt/decrypt timing on synthetic images")
    p.add_argument("--sizes", type=int, nargs="+", default=list(bench.DEFAULT_SIZES),
                   help="image sides, e.g. --sizes 256 512 1024")
    p.add_argument("--reps", type=int, default=bench.DEFAULT_REPS)
    p.add_argument("--backend", choices=("auto", "python", "numba", "both"),
                   default="auto")
    p.add_argument("--seed", type=int, default=0)
    _add_key_options(p)
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_bench)

    p = sub.add_parser("keyspace", help="print the nominal key-space size")
    p.set_defaults(handler=_cmd_keyspace)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PgmFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidKeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_KEY
    except IntegrationDivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
