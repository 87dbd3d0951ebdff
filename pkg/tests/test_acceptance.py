"""Exit criteria.  Each test logs a single PASS/FAIL line and then asserts."""

import io
import itertools
import json
from pathlib import Path

import pytest

from actpure.catalog import parse_catalog, serialize_catalog
from actpure.classes import (
    ABS_PURE,
    ALMOST_PURE,
    WEAKLY_F,
    WEAKLY_P,
    ActClass,
    check_class_closure,
    class_contains,
    membership_counterexample,
    right_congruences,
)
from actpure.cli import main
from actpure.core import SubactHandle
from actpure.enumeration import build_catalog, enumerate_extensions, enumerate_monoids, subact_member_sets
from actpure.equations import ConstTerm, VarTerm
from actpure.preenvelope import (
    extract_retraction,
    find_min_preenvelope,
    product_preenvelope,
    reduce_via_pure_closure,
    verify_preenvelope,
)
from actpure.purity import (
    is_pure,
    is_pure_bounded,
    is_pure_via_diagram,
    minimal_pure_superact_oracle,
    pure_closure_trace,
    purity_witness,
)

FIX = Path(__file__).parent / "fixtures"

# abs-pure is tested at the same size bound as the closure sweep
KINDS = [ActClass(WEAKLY_P), ActClass(WEAKLY_F), ActClass(ALMOST_PURE), ActClass(ABS_PURE, 4)]
RUN_BOUND = 2


@pytest.fixture(scope="module")
def catalog_34():
    return build_catalog(3, 4)


@pytest.fixture(scope="module")
def pipeline():
    """Product construction + pure-closure reduction for every kind and
    every act of size <= 2 over every monoid of order <= 2; plus the
    smallest-target search at the same bounds."""
    cat = build_catalog(2, 2)
    runs = []
    for cls in KINDS:
        for _, A in cat.pairs():
            pp = product_preenvelope(A, cls, RUN_BOUND)
            red = reduce_via_pure_closure(pp.product, pp.phi)
            in_class = class_contains(cls, red.act)
            rep = verify_preenvelope(red.phi, cls, RUN_BOUND) if in_class else None
            runs.append(dict(source="product", cls=cls, A=A, phi=red.phi, in_class=in_class, report=rep))
            found = find_min_preenvelope(A, cls, RUN_BOUND, RUN_BOUND)
            if found is not None:
                phi, rep = found
                runs.append(dict(source="minimize", cls=cls, A=A, phi=phi, in_class=True, report=rep))
    return runs


def test_criterion_1_purity_oracles(catalog_34, acceptance_log):
    subacts = mismatches = bounded_fail = 0
    for _, A in catalog_34.pairs():
        for members in subact_member_sets(A):
            sub = SubactHandle(A, members)
            subacts += 1
            pure = is_pure(sub).pure
            if pure != is_pure_via_diagram(sub).pure:
                mismatches += 1
            if pure and not is_pure_bounded(sub, 2, 4):
                bounded_fail += 1
    ok = mismatches == 0 and bounded_fail == 0
    acceptance_log(1, ok, f"{subacts} subacts, {mismatches} retraction/diagram mismatches, {bounded_fail} bounded(2,4) failures")
    assert ok


def test_criterion_2_pure_closure(catalog_34, S3, B, acceptance_log):
    pairs = bad = smaller_than_oracle = 0
    equal_small = total_small = 0
    for _, A in catalog_34.pairs():
        for k in range(1, A.size + 1):
            for seed in itertools.combinations(range(A.size), k):
                pairs += 1
                trace = pure_closure_trace(A, seed)
                U = trace.result
                if not (set(seed) <= U.member_set and is_pure(U).pure and trace.iterations <= A.size):
                    bad += 1
                best = minimal_pure_superact_oracle(A, seed)
                if U.size < best.size:
                    smaller_than_oracle += 1
                if A.size <= 3:
                    total_small += 1
                    equal_small += U.size == best.size
    regress = (
        pure_closure_trace(B, [0]).result.members == (0,)
        and minimal_pure_superact_oracle(B, [0]).members == (0,)
        and pure_closure_trace(B, [0, 1]).result.members == (0, 1, 2)
        and minimal_pure_superact_oracle(B, [0, 1]).members == (0, 1, 2)
    )
    ok = bad == 0 and smaller_than_oracle == 0 and regress
    acceptance_log(
        2,
        ok,
        f"{pairs} (act, seed) pairs, {bad} contract violations, {smaller_than_oracle} below oracle, "
        f"closure = oracle on {equal_small}/{total_small} pairs with |A| <= 3, S3 regressions {'ok' if regress else 'broken'}",
    )
    assert ok


def test_criterion_3_sufficiency(pipeline, acceptance_log):
    runs = [r for r in pipeline if r["source"] == "product"]
    failures = [r for r in runs if not (r["in_class"] and r["report"].verified)]
    ok = not failures
    acceptance_log(3, ok, f"{len(runs)} product runs, {len(failures)} failures")
    assert ok, [(r["cls"].label(), r["A"].name) for r in failures]


def test_criterion_4_necessity(pipeline, acceptance_log):
    checked = failures = 0
    for r in pipeline:
        rep = r["report"]
        if rep is None or not rep.verified or not class_contains(r["cls"], r["A"]):
            continue
        checked += 1
        phi = r["phi"]
        image = SubactHandle(phi.target, tuple(sorted(set(phi.map))))
        if extract_retraction(phi) is None or not is_pure(image).pure:
            failures += 1
    ok = failures == 0 and checked > 0
    acceptance_log(4, ok, f"{checked} verified preenvelopes from class members, {failures} failures")
    assert ok


def test_criterion_5_corollary_closure(catalog_34, acceptance_log):
    counterexamples = []
    products = pure_subacts = 0
    for cls in KINDS:
        for S in catalog_34.monoids:
            rep = check_class_closure(cls, catalog_34.acts_by_monoid[S.name], cap=16)
            products += rep.products_checked
            pure_subacts += rep.pure_subacts_checked
            if not (rep.product_closed and rep.pure_subact_closed):
                counterexamples.extend((cls.label(), S.name, c[0]) for c in rep.counterexamples)
    ok = not counterexamples
    acceptance_log(5, ok, f"{products} products, {pure_subacts} proper pure subacts, {len(counterexamples)} counterexamples")
    assert ok, counterexamples


def test_criterion_6_monicity(pipeline, acceptance_log):
    verified = [r for r in pipeline if r["report"] is not None and r["report"].verified]
    not_monic = [r for r in verified if not r["phi"].is_injective()]
    ok = not not_monic
    detail = f"{len(verified)} verified preenvelopes, {len(not_monic)} not injective"
    if not_monic:
        detail += ": " + ", ".join(
            sorted({f"{r['cls'].label()} on {r['A'].name} ({r['source']})" for r in not_monic})
        )
    acceptance_log(6, ok, detail)
    assert ok, detail


def test_criterion_7_separation(S3, B, PQ, acceptance_log):
    p_inj = class_contains(ActClass(WEAKLY_P), PQ)
    f_inj = class_contains(ActClass(WEAKLY_F), PQ)
    inst, _ = membership_counterexample(ActClass(WEAKLY_F), PQ)
    almost = class_contains(ActClass(ALMOST_PURE), PQ)
    pq = SubactHandle(B, (0, 1))
    pq_pure = is_pure(pq).pure
    w = purity_witness(pq)
    expected = {(VarTerm(0, 1), ConstTerm(0)), (VarTerm(0, 2), ConstTerm(1))}
    witness_ok = w is not None and w.var_count == 1 and set(w.equations) == expected
    p_pure = is_pure(SubactHandle(B, (0,))).pure
    q_pure = is_pure(SubactHandle(B, (1,))).pure
    flags = [p_inj, not f_inj and inst.inner.labels() == ["r", "s"], not almost, not pq_pure and witness_ok, p_pure, q_pure]
    ok = all(flags)
    acceptance_log(7, ok, f"six regression booleans {flags}")
    assert ok


def test_criterion_8_counts(E2, S3, PQ, acceptance_log):
    monoids = [len(enumerate_monoids(k)) for k in (1, 2, 3)]
    congs = (len(right_congruences(E2)), len(right_congruences(S3)))
    exts = len(enumerate_extensions(PQ, 1))
    ok = monoids == [1, 2, 7] and congs == (2, 3) and exts == 5
    acceptance_log(8, ok, f"monoids {monoids}, congruences {congs}, extensions {exts}")
    assert ok


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    return main(list(argv), stdout=out, stderr=err), out.getvalue()


def test_criterion_9_cli_contract(acceptance_log):
    s3 = str(FIX / "s3.cat")
    emitted = [["monoids", "--order", str(k)] for k in (1, 2, 3)]
    emitted += [["acts", "--monoid", S.name, "--size", str(m)] for k in (1, 2, 3) for S in enumerate_monoids(k) for m in (1, 2, 3)]
    emitted += [["extensions", "--file", s3, "--act", "PQ", "--subact", "p,q", "--extra", str(e)] for e in (1, 2)]
    trips = 0
    for argv in emitted:
        code, out = _cli("--json", "enumerate", *argv)
        text = json.loads(out)["catalog"]
        trips += code == 0 and serialize_catalog(parse_catalog(text)) == text
    expected = [
        (0, ["validate", s3, str(FIX / "e2.cat")]),
        (0, ["check-pure", s3, "--act", "B", "--subact", "p,q"]),
        (0, ["classify", s3, "--act", "PQ"]),
        (2, ["validate", str(FIX / "malformed.cat")]),
        (2, ["validate", str(FIX / "unknown_ref.cat")]),
        (2, ["validate", str(FIX / "not_assoc.cat")]),
        (2, ["check-pure", s3, "--act", "B", "--subact", "u"]),
        (3, ["--cap", "50", "preenvelope", s3, "--act", "PQ", "--class", "all", "--target-bound", "3", "--verify-bound", "2"]),
    ]
    codes_ok = sum(_cli(*argv)[0] == want for want, argv in expected)
    ok = trips == len(emitted) and codes_ok == len(expected)
    acceptance_log(9, ok, f"round-trip {trips}/{len(emitted)} emitted catalogs, exit codes {codes_ok}/{len(expected)}")
    assert ok
