import json
from fractions import Fraction

from . import _core
from ._core import BudgetExhausted, InfeasibleSize, InvalidArgument, NuspreadError

__all__ = [
    "BudgetExhausted",
    "InfeasibleSize",
    "InvalidArgument",
    "NuspreadError",
    "block_permutation_spread_prob",
    "boost_vector",
    "bivalued_spectrum_pm",
    "brute_force_pm_oracle",
    "build_spectrum",
    "condition_report",
    "count_graphs_exact",
    "cover_value",
    "critical_alpha",
    "expected_cover_count",
    "faithful_threshold_map",
    "gnd_isolated_moments",
    "mc_estimate",
    "mckay_count",
    "moment_diagnostics",
    "mu_exact",
    "perfect_matching",
    "scenario_names",
    "scenario_run",
    "t_ell_transform",
    "threshold_scan",
    "up_closure",
]


def _num(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return x


def _probs(p):
    if isinstance(p, dict):
        return {k: _num(v) for k, v in p.items()}
    if isinstance(p, (list, tuple)):
        return [_num(v) for v in p]
    return _num(p)


def _frac(s):
    return Fraction(s)


def _call(fn, payload):
    return json.loads(fn(json.dumps(payload)))


def mu_exact(ground, family, p):
    return _frac(_core.mu_exact(json.dumps({"ground": list(ground), "family": family, "p": _probs(p)})))


def up_closure(ground, generators):
    return _call(_core.up_closure, {"ground": list(ground), "generators": generators})


def expected_cover_count(ground, family, q):
    return _frac(_core.expected_cover_count(json.dumps({"ground": list(ground), "family": family, "q": _probs(q)})))


def t_ell_transform(ground, q, ell):
    out = _call(_core.t_ell_transform, {"ground": list(ground), "q": _probs(q), "ell": ell})
    return {k: _frac(v) for k, v in out.items()}


def boost_vector(ground, p, k):
    out = _call(_core.boost_vector, {"ground": list(ground), "p": _probs(p), "k": k})
    return {k_: _frac(v) for k_, v in out.items()}


def faithful_threshold_map(ground, family, p):
    return _frac(_core.faithful_threshold_map(json.dumps({"ground": list(ground), "family": family, "p": _probs(p)})))


def perfect_matching(n, edges):
    out = json.loads(_core.perfect_matching(n, json.dumps([list(e) for e in edges])))
    out["witness"] = [tuple(e) for e in out["witness"]]
    return out


def brute_force_pm_oracle(n, edges):
    return _core.brute_force_pm_oracle(n, json.dumps([list(e) for e in edges]))


def build_spectrum(sizes, P, alpha):
    return [tuple(e) for e in json.loads(_core.build_spectrum(json.dumps({"sizes": sizes, "P": P}), alpha))]


def critical_alpha(sizes, P):
    return json.loads(_core.critical_alpha(json.dumps({"sizes": sizes, "P": P})))


def bivalued_spectrum_pm(degrees, alpha):
    return _core.bivalued_spectrum_pm(list(degrees), alpha)


def cover_value(ground, h, q, fractional=False):
    out = json.loads(_core.cover_value(json.dumps({"ground": list(ground), "h": h, "q": _probs(q)}), fractional))
    out["value"] = _frac(out["value"])
    return out


def verify_q_spread(ground, h, q, support, weights):
    payload = {
        "ground": list(ground),
        "h": h,
        "q": _probs(q),
        "nu": {"support": support, "weights": [_num(w) for w in weights]},
    }
    return _call(_core.verify_q_spread, payload)


def block_permutation_spread_prob(n, h, s, sizes=None, mode="closed_form"):
    payload = {"n": n, "h": [list(e) for e in h], "s": [list(e) for e in s], "mode": mode}
    if sizes is not None:
        payload["sizes"] = list(sizes)
    return _frac(_core.block_permutation_spread_prob(json.dumps(payload)))


def count_graphs_exact(degrees):
    return int(_core.count_graphs_exact(list(degrees)))


def mckay_count(degrees):
    return json.loads(_core.mckay_count(list(degrees)))


def gnd_isolated_moments(degrees, method="exact", enforce_validity=True):
    return json.loads(_core.gnd_isolated_moments(list(degrees), method, enforce_validity))


def moment_diagnostics(degrees):
    return json.loads(_core.moment_diagnostics(list(degrees)))


def condition_report(degrees, delta=0.5):
    return json.loads(_core.condition_report(list(degrees), delta))


def mc_estimate(config):
    return _call(_core.mc_estimate, config)


def threshold_scan(config):
    return _call(_core.threshold_scan, config)


def scenario_names():
    return list(_core.scenario_names())


def scenario_run(name, **options):
    return json.loads(_core.scenario_run(name, json.dumps(options)))
