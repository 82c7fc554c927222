"""Command-line front end. Exit codes: 0 all claims pass, 1 a claim failed, 2 bad input."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time

from .biset import NotCharacteristicError, canonical_stable_biset, is_left_stable, regular_biset
from .config import SizeLimitError, get_limits, set_limits
from .fusion import FusionSystem, full_fusion, fusion_of_group, is_characteristic
from .gamma import GammaGroup, verify_fusion_containment
from .groups import Group, Subgroup, center, is_isomorphic, parse_group, subgroups
from .pipeline import (VerificationReport, blueprint_report, default_base_character,
                       plan_report, run_example)
from .repcalc import TildeModule, mackey_check

log = logging.getLogger("fusionforge")


class UsageError(ValueError):
    pass


def resolve_subgroup(G: Group, text: str, F: FusionSystem) -> Subgroup:
    """S, Z, or a descriptor matched up to isomorphism, preferring F-characteristic matches."""
    if text == "S":
        return G.whole
    if text == "Z":
        return center(G.whole)
    try:
        model = parse_group(text)
    except ValueError as err:
        raise UsageError(str(err)) from None
    matches = [H for H in subgroups(G.whole) if H.order == model.order and is_isomorphic(H, model.whole)]
    if not matches:
        raise UsageError(f"{G.label} has no subgroup isomorphic to {text}")
    return next((H for H in matches if is_characteristic(F, H)), matches[0])


def _fusion(args, S: Subgroup) -> FusionSystem:
    return fusion_of_group(S) if args.fusion == "inner" else full_fusion(S)


def _setup(args, rep_name: str):
    G = _group(args.group)
    F = _fusion(args, G.whole)
    K = resolve_subgroup(G, args.char_subgroup, F)
    rep = VerificationReport(rep_name, {"group": G.label, "char_subgroup": args.char_subgroup,
                                        "K": list(K.elements), "fusion": args.fusion})
    return G, F, K, rep


def _group(text: str) -> Group:
    try:
        return parse_group(text)
    except ValueError as err:
        raise UsageError(str(err)) from None


def _biset(args, G, F, K, rep):
    if getattr(args, "regular", False):
        rep.inputs["biset"] = "regular"
        return regular_biset(G.whole)
    cert = is_characteristic(F, K)
    if not cert:
        L, phi = cert.witness
        rep.add("characteristic", "F-characteristic subgroup hypothesis", False,
                {"L": list(L.elements), "phi": list(phi.images)})
        return None
    rep.add("characteristic", "F-characteristic subgroup hypothesis", True,
            {"extensions": len(cert.extensions)})
    rep.inputs["biset"] = "canonical"
    return canonical_stable_biset(G.whole, F, K)


def cmd_verify_stability(args) -> VerificationReport:
    G, F, K, rep = _setup(args, "verify-stability")
    omega = _biset(args, G, F, K, rep)
    if omega is not None:
        st = is_left_stable(omega, F)
        bad = st.first_failure
        rep.inputs["omega_size"] = omega.size
        rep.add("left-stable", "left F-stability of the biset", st.stable,
                {"entries": [e.to_json() for e in st.entries]} if bad is None else bad.to_json())
    return rep


def cmd_build_gamma(args) -> VerificationReport:
    G, F, K, rep = _setup(args, "build-gamma")
    omega = _biset(args, G, F, K, rep)
    if omega is None:
        return rep
    gamma = GammaGroup(omega)
    problems = gamma.verify_iota()
    rep.add("iota-monomorphism", "iota is a monomorphism", not problems,
            {"iota": {str(s): gamma.iota(s).to_json() for s in G.whole.elements}}
            if not problems else {"problems": problems[:5]})
    rng = random.Random(args.seed)
    bad = None
    for _ in range(args.samples):
        f, g = gamma.random_element(rng), gamma.random_element(rng)
        fg = gamma.mul(f, g)
        pointwise = tuple(gamma.act(f, gamma.act(g, x)) for x in range(omega.size))
        if gamma.to_bijection(fg) != pointwise or not gamma.commutes_with_right_action(fg):
            bad = (f, g)
            break
    rep.add("wreath-law", "Gamma_Omega as a wreath product", bad is None,
            {"gamma": gamma.to_json(), "samples": args.samples, "seed": args.seed} if bad is None
            else {"f": bad[0].to_json(), "g": bad[1].to_json()})
    return rep


def cmd_check_park(args) -> VerificationReport:
    G, F, K, rep = _setup(args, "check-park")
    omega = _biset(args, G, F, K, rep)
    if omega is None:
        return rep
    gamma = GammaGroup(omega)
    cont = verify_fusion_containment(gamma, F)
    rep.add("fusion-containment", "F contained in F_S(Gamma_Omega)", cont.contained,
            {"entries": [e.to_json() for e in cont.entries]})
    return rep


def cmd_mackey(args) -> VerificationReport:
    G, F, K, rep = _setup(args, "mackey")
    omega = _biset(args, G, F, K, rep)
    if omega is None:
        return rep
    V = default_base_character(G.whole)
    rep.inputs["V"] = {"build": V.build[0], "degree": V.degree}
    T = TildeModule(omega, V)
    results = [mackey_check(T, H) for H in subgroups(G.whole)]
    rep.add("mackey", "Mackey decomposition of the restricted module", all(results),
            {"subgroups": [m.to_json() for m in results]})
    return rep


def cmd_bigcenter(args) -> VerificationReport:
    G = _group(args.group)
    if G.order > 1 and G.whole.prime is None:
        raise UsageError(f"{G.label} is not a p-group")
    return blueprint_report(G)


def cmd_run_example(args) -> VerificationReport:
    try:
        return run_example(args.kind, args.p, args.N)
    except SizeLimitError:
        raise
    except ValueError as err:
        raise UsageError(str(err)) from None


def cmd_plan(args) -> VerificationReport:
    G = _group(args.group)
    if G.order > 1 and G.whole.prime is None:
        raise UsageError(f"{G.label} is not a p-group")
    return plan_report(G)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fusionforge",
                                     description="Exact checks of fusion-system constructions")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--timing", action="store_true", help="record elapsed_ms instead of 0")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("--max-s-order", type=int)
    common.add_argument("--max-g-order", type=int)
    common.add_argument("--max-pair-order", type=int)

    sub = parser.add_subparsers(dest="command", required=True)

    def with_group(name, func, help, char=True):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("--group", required=True, help='descriptor such as "Q8" or "ES(27,exp_p)"')
        if char:
            p.add_argument("--char-subgroup", default="S", help="S, Z, or a descriptor such as C2")
            p.add_argument("--fusion", choices=["full", "inner"], default="full")
            p.add_argument("--regular", action="store_true",
                           help="use the regular biset instead of the canonical one")
        p.set_defaults(func=func)
        return p

    with_group("verify-stability", cmd_verify_stability, "left F-stability of the canonical biset")
    g = with_group("build-gamma", cmd_build_gamma, "Gamma_Omega, iota and the wreath law")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--samples", type=int, default=50)
    with_group("check-park", cmd_check_park, "witnesses for F inside F_S(Gamma_Omega)")
    with_group("mackey", cmd_mackey, "Mackey decomposition for every subgroup of S")
    with_group("bigcenter", cmd_bigcenter, "the big-center action blueprint", char=False)
    with_group("plan", cmd_plan, "the rank-reduction plan", char=False)
    ex = sub.add_parser("run-example", parents=[common], help="one of the three example packages")
    ex.add_argument("kind", choices=["cyclic", "quaternion", "elem_abelian"])
    ex.add_argument("--p", type=int, default=2)
    ex.add_argument("--N", type=int, default=2)
    ex.set_defaults(func=cmd_run_example)
    return parser


def render_text(rep: VerificationReport, timing: bool) -> str:
    lines = [f"scenario: {rep.scenario}"]
    lines.extend(f"  {k}: {v}" for k, v in rep.inputs.items())
    for c in rep.claims:
        lines.append(f"[{'pass' if c.passed else 'FAIL'}] {c.id}: {c.paper_ref}")
    lines.append(f"verdict: {'pass' if rep.passed else 'fail'}")
    if timing:
        lines.append(f"elapsed_ms: {rep.elapsed_ms:.1f}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    caps = {k: v for k, v in (("max_s_order", args.max_s_order), ("max_g_order", args.max_g_order),
                              ("max_pair_order", args.max_pair_order)) if v is not None}
    old = set_limits(**caps) if caps else get_limits()
    t0 = time.perf_counter()
    try:
        rep = args.func(args)
    except (UsageError, SizeLimitError, NotCharacteristicError) as err:
        print(f"fusionforge: error: {err}", file=sys.stderr)
        return 2
    finally:
        if caps:
            set_limits(**{k: getattr(old, k) for k in caps})
    if not rep.elapsed_ms:
        rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    if args.json:
        print(json.dumps(rep.to_json(timing=args.timing), indent=2, sort_keys=True))
    else:
        print(render_text(rep, args.timing))
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
