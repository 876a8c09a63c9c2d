"""Command-line front end.

Every subcommand reads JSON (inline or from a file path), calls one library
operation and writes deterministic JSON. Integers are decimal strings.

Exit codes: 0 success, 1 malformed input, 2 rank/degree mismatch,
3 non-integral conversion, 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Any, Sequence

from .augment import TruncPoly, chi_class, dev_class, psi_image, scalar_relation_class, universal_factor
from .errors import DomainError, SchemaError, ShapeError
from .multiset import enumerate_multisets
from .numap import (
    MapOracle,
    NumTable,
    StrictTable,
    check_eq1,
    check_eq2,
    default_sample,
    deviate,
    eval_table,
    extract,
    numerical_to_strict_rational,
    random_table,
    strict_to_numerical,
    table_as_oracle,
    table_from_json,
    verify_degree,
)
from .natural import (
    TensorElem,
    check_naturality,
    demo_counterexample,
    hom_by_name,
    square_map,
)
from .ring import algebra_by_name, lemma_binomial, parse_int

EXIT_OK, EXIT_MALFORMED, EXIT_SHAPE, EXIT_NONINTEGRAL, EXIT_FAILED = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# Input helpers


def load_json(value: str) -> Any:
    """Inline JSON, ``@path``, or an existing file path."""
    if value.startswith("@"):
        with open(value[1:]) as fh:
            return json.load(fh)
    if os.path.isfile(value):
        with open(value) as fh:
            return json.load(fh)
    return json.loads(value)


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise SchemaError(f"range must look like a:b, got {text!r}") from None
    if not sep or a > b:
        raise SchemaError(f"range must look like a:b with a <= b, got {text!r}")
    return a, b


def parse_vector(data: Any, k: int | None = None) -> tuple[int, ...]:
    if not isinstance(data, list):
        raise SchemaError("vector must be a JSON array of decimal strings")
    v = tuple(parse_int(c) for c in data)
    if k is not None and len(v) != k:
        raise ShapeError(f"vector of length {len(v)}, expected {k}")
    return v


def poly_spec_to_table(spec: dict) -> NumTable | StrictTable:
    """``{"poly": [[e, "c"], ...]}`` or ``{"polys": [...]}`` as a table.

    Exponents are naturals (one variable) or multiplicity arrays;
    ``"basis": "binomial"`` reads terms as binom(x, X) instead of x^X.
    """
    if "poly" in spec:
        outputs = [spec["poly"]]
    elif "polys" in spec:
        outputs = spec["polys"]
    else:
        raise SchemaError("oracle spec needs 'poly', 'polys', or a table")
    if not isinstance(outputs, list) or not all(isinstance(o, list) for o in outputs):
        raise SchemaError("polynomial terms must be arrays of [exponent, coefficient]")
    basis = spec.get("basis", "monomial")
    if basis not in ("monomial", "binomial"):
        raise SchemaError("basis must be 'monomial' or 'binomial'")
    m = len(outputs)
    terms: list[tuple[int, tuple[int, ...], int]] = []
    for i, out in enumerate(outputs):
        for term in out:
            if not isinstance(term, list) or len(term) != 2:
                raise SchemaError("each term is [exponent, coefficient]")
            e, c = term
            exps = (parse_int(e),) if not isinstance(e, list) else tuple(parse_int(x) for x in e)
            if any(x < 0 for x in exps):
                raise SchemaError("exponents must be natural")
            terms.append((i, exps, parse_int(c)))
    ks = {len(e) for _, e, _ in terms}
    k = spec.get("k", ks.pop() if len(ks) == 1 else 1)
    if any(len(e) != k for _, e, _ in terms):
        raise ShapeError("all exponents must have the same length k")
    n = spec.get("n", max((sum(e) for _, e, _ in terms), default=0))
    acc: dict[tuple[int, ...], list[int]] = {}
    for i, e, c in terms:
        acc.setdefault(e, [0] * m)[i] += c
    cls = StrictTable if basis == "monomial" else NumTable
    return cls(k, m, n, acc)


def load_table(value: str) -> NumTable | StrictTable:
    data = load_json(value)
    if isinstance(data, dict) and "coeffs" in data:
        return table_from_json(data)
    if isinstance(data, dict):
        return poly_spec_to_table(data)
    raise SchemaError("expected a table or polynomial oracle spec object")


def load_oracle(value: str) -> tuple[MapOracle, NumTable | StrictTable]:
    T = load_table(value)
    return table_as_oracle(T), T


def vec_json(v: Sequence[Any]) -> list[str]:
    return [str(c) for c in v]


def emit(args: argparse.Namespace, payload: Any) -> None:
    text = json.dumps(payload, ensure_ascii=False)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# Subcommands


def cmd_deviate(args) -> int:
    phi, _ = load_oracle(args.oracle)
    xs = load_json(args.args)
    if not isinstance(xs, list):
        raise SchemaError("--args must be an array of vectors")
    emit(args, vec_json(deviate(phi, [parse_vector(x, phi.k) for x in xs])))
    return EXIT_OK


def cmd_extract(args) -> int:
    phi, _ = load_oracle(args.oracle)
    emit(args, extract(phi, args.n).to_json())
    return EXIT_OK


def cmd_eval(args) -> int:
    T = load_table(args.table)
    A = algebra_by_name(args.algebra)
    at = load_json(args.at)
    if not isinstance(at, list):
        raise SchemaError("--at must be an array of algebra elements")
    if len(at) != T.k:
        raise ShapeError(f"table has k={T.k}, got {len(at)} arguments")
    a = [A.element_from_json(x) for x in at]
    if A.name == "Z":
        emit(args, vec_json(eval_table(T, a)))
    else:
        emit(args, [A.element_to_json(y) for y in eval_table(T, a, A)])
    return EXIT_OK


def cmd_verify(args) -> int:
    phi, _ = load_oracle(args.oracle)
    lo, hi = parse_range(args.range) if args.range else (-3, 3)
    r_lo, r_hi = parse_range(args.r_range) if args.r_range else (-6, 6)
    sample = default_sample(phi.k, args.n, lo, hi, r_lo, r_hi,
                            max_tuples=args.max_tuples, seed=args.seed)
    report = verify_degree(phi, args.n, sample)
    out = report.to_json()
    if args.limit is not None:
        out["deviation_violations"] = out["deviation_violations"][:args.limit]
        out["scalar_violations"] = out["scalar_violations"][:args.limit]
    emit(args, out)
    return EXIT_OK if report.ok else EXIT_FAILED


def _pair(args, lhs, rhs) -> int:
    emit(args, {"lhs": vec_json(lhs), "rhs": vec_json(rhs), "equal": lhs == rhs})
    return EXIT_OK if lhs == rhs else EXIT_FAILED


def cmd_eq1(args) -> int:
    phi, _ = load_oracle(args.oracle)
    x = parse_vector(load_json(args.x), phi.k)
    return _pair(args, *check_eq1(phi, args.n, args.r, x))


def cmd_eq2(args) -> int:
    phi, _ = load_oracle(args.oracle)
    a = parse_vector(load_json(args.a))
    xs = load_json(args.xs)
    if not isinstance(xs, list):
        raise SchemaError("--xs must be an array of vectors")
    return _pair(args, *check_eq2(phi, args.n, a, [parse_vector(x, phi.k) for x in xs]))


def cmd_convert(args) -> int:
    T = load_table(args.table)
    target = args.to or ("binomial" if T.basis == "monomial" else "monomial")
    if target == T.basis:
        emit(args, T.to_json())
        return EXIT_OK
    if target == "binomial":
        if not T.is_integral:
            emit(args, T.to_json())
            return EXIT_NONINTEGRAL
        emit(args, strict_to_numerical(T).to_json())
        return EXIT_OK
    S, integral = numerical_to_strict_rational(T)
    emit(args, S.to_json())
    return EXIT_OK if integral else EXIT_NONINTEGRAL


def _require_numtable(T) -> NumTable:
    if isinstance(T, StrictTable):
        if not T.is_integral:
            raise DomainError("rational strict table does not define a map over Z")
        return strict_to_numerical(T)
    return T


def cmd_universal(args) -> int:
    T = _require_numtable(load_table(args.table))
    emit(args, universal_factor(T).to_json())
    return EXIT_OK


def cmd_chi(args) -> int:
    x = parse_vector(load_json(args.x))
    emit(args, chi_class(x, args.n).to_json())
    return EXIT_OK


def cmd_naturality(args) -> int:
    T = _require_numtable(load_table(args.table))
    source = algebra_by_name(args.source) if args.source else None
    h = hom_by_name(args.hom, source)
    if args.z:
        data = load_json(args.z)
        if not isinstance(data, list):
            raise SchemaError("--z must be an array of tensor elements")
        zs = []
        for z in data:
            if not isinstance(z, list) or len(z) != T.k:
                raise ShapeError(f"each tensor element needs {T.k} components")
            zs.append(TensorElem(h.source, [h.source.element_from_json(c) for c in z]))
    else:
        lo, hi = parse_range(args.range) if args.range else (-5, 5)
        rng = random.Random(args.seed)
        zs = [TensorElem(h.source, [h.source.random_element(rng, lo, hi) for _ in range(T.k)])
              for _ in range(args.count)]
    report = check_naturality(T, h, zs)
    emit(args, report.to_json())
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_demo(args) -> int:
    phi = square_map() if args.map == "square" else None
    emit(args, demo_counterexample(args.D, phi).to_json())
    return EXIT_OK


def run_identities(seed: int = 0, r_range: tuple[int, int] = (-10, 10),
                   count: int = 500) -> dict[str, Any]:
    """Exhaustive binomial lemma plus randomized eq1/eq2 and augmentation checks."""
    lo, hi = r_range
    lemma_cases = lemma_fail = 0
    for r in range(lo, hi + 1):
        for n in range(7):
            for m in range(n + 1):
                lhs, rhs = lemma_binomial(r, m, n)
                lemma_cases += 1
                lemma_fail += lhs != rhs
    rng = random.Random(seed)
    s_lo, s_hi = max(lo, -6), min(hi, 6)
    eq1_fail = eq2_fail = aug_fail = 0
    for _ in range(count):
        T = random_table(rng)
        phi = table_as_oracle(T)
        x = tuple(rng.randint(-3, 3) for _ in range(T.k))
        l1, r1 = check_eq1(phi, T.n, rng.randint(s_lo, s_hi), x)
        eq1_fail += l1 != r1
        t = rng.randint(1, T.n + 1)
        a = [rng.randint(s_lo, s_hi) for _ in range(t)]
        xs = [tuple(rng.randint(-3, 3) for _ in range(T.k)) for _ in range(t)]
        l2, r2 = check_eq2(phi, T.n, a, xs)
        eq2_fail += l2 != r2
    for k in range(1, 4):
        for n in range(5):
            for X in enumerate_multisets(k, n):
                aug_fail += psi_image(X, n) != TruncPoly.monomial(X, n)
            x = tuple(rng.randint(-4, 4) for _ in range(k))
            aug_fail += not scalar_relation_class(rng.randint(s_lo, s_hi), x, n).is_zero()
            vs = [tuple(rng.randint(-4, 4) for _ in range(k)) for _ in range(n + 1)]
            aug_fail += not dev_class(vs, n, k).is_zero()
    return {
        "seed": seed,
        "lemma": {"cases": lemma_cases, "failures": lemma_fail},
        "eq1": {"cases": count, "failures": eq1_fail},
        "eq2": {"cases": count, "failures": eq2_fail},
        "augmentation": {"failures": aug_fail},
        "ok": not (lemma_fail or eq1_fail or eq2_fail or aug_fail),
    }


def cmd_identities(args) -> int:
    r_range = parse_range(args.range) if args.range else (-10, 10)
    summary = run_identities(args.seed, r_range, args.count)
    emit(args, summary)
    return EXIT_OK if summary["ok"] else EXIT_FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--range", help="sample range a:b")

    p = _Parser(prog="nummap", description="Exact calculus of numerical maps Z^k -> Z^m.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("deviate", cmd_deviate, "deviation of an oracle at a tuple of vectors")
    sp.add_argument("--oracle", required=True)
    sp.add_argument("--args", required=True, help="JSON array of vectors")

    sp = add("extract", cmd_extract, "binomial-basis table of an oracle")
    sp.add_argument("--oracle", required=True)
    sp.add_argument("-n", type=int, required=True)

    sp = add("eval", cmd_eval, "evaluate a table over Z, Z^r or IntZ")
    sp.add_argument("--table", required=True)
    sp.add_argument("--at", required=True, help="JSON array of k algebra elements")
    sp.add_argument("--algebra", default="Z")

    sp = add("verify", cmd_verify, "sample-based degree check; exit 4 on violation")
    sp.add_argument("--oracle", required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--r-range", help="scalar range a:b (default -6:6)")
    sp.add_argument("--max-tuples", type=int, default=5000)
    sp.add_argument("--limit", type=int, help="truncate listed violations")

    sp = add("eq1", cmd_eq1, "both sides of the scalar identity")
    sp.add_argument("--oracle", required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--x", required=True)

    sp = add("eq2", cmd_eq2, "both sides of the scaled-deviation identity")
    sp.add_argument("--oracle", required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--a", required=True, help="JSON array of scalars")
    sp.add_argument("--xs", required=True, help="JSON array of vectors")

    sp = add("convert", cmd_convert, "monomial <-> binomial basis; exit 3 if non-integral")
    sp.add_argument("--table", required=True)
    sp.add_argument("--to", choices=["monomial", "binomial"])

    sp = add("universal", cmd_universal, "basis assignment of the universal factorization")
    sp.add_argument("--table", required=True)

    sp = add("chi", cmd_chi, "class of [x] in Z[t]/J_n")
    sp.add_argument("--x", required=True)
    sp.add_argument("-n", type=int, required=True)

    sp = add("naturality", cmd_naturality, "check naturality squares; exit 4 on mismatch")
    sp.add_argument("--table", required=True)
    sp.add_argument("--hom", required=True, help="id, ev:<a>, diag, proj:<i>, or composites g.f")
    sp.add_argument("--source", help="source algebra for id (Z, Z^2, IntZ)")
    sp.add_argument("--z", help="JSON array of tensor elements; random if omitted")
    sp.add_argument("--count", type=int, default=50)

    sp = add("demo-counterexample", cmd_demo, "monomial coefficients of binom(x,2)")
    sp.add_argument("-D", type=int, default=2)
    sp.add_argument("--map", choices=["binom2", "square"], default="binom2")

    sp = add("identities", cmd_identities, "exhaustive/randomized identity suite")
    sp.add_argument("--count", type=int, default=500)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ShapeError as exc:
        print(f"nummap: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except (SchemaError, DomainError, json.JSONDecodeError, OSError) as exc:
        print(f"nummap: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
