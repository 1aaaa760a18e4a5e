"""
Verifiers for product-space shadows and the discrete group diagnostics
"""
import numpy as np

from ..config import get_settings
from ..geometry.hyperbolic_plane import dist_array, mobius_array
from ..geometry.product_space import (
    ProductBoundaryPoint,
    ProductIsometry,
    ProductPoint,
    busemann_vec,
    kappa,
    product_shadow_contains,
    visual_endpoint,
)
from ..groups.ball import GroupElement, enumerate_ball
from ..groups.group_spec import conjugate_spec, load_group_spec
from ..groups.projections import jordan_projection
from ..groups.transversality import div_factors_report
from ..models import LemmaId
from .base import Outcome, Verifier, register
from .sampling import (
    near_axis_loxodromic,
    perturbed_boundary,
    random_point,
    random_product_isometry,
)

PAIRS_PER_TRIAL = 64


@register
class SimultaneousShadowVerifier(Verifier):
    lemma_id = LemmaId.SIMULTANEOUS_SHADOW
    description = "product shadows bound the vector Busemann cocycle in every factor"
    defaults = {'sandwich': 1e-9, 'r': 2}

    def check(self, rng, tol):
        r = int(tol['r'])
        z = ProductPoint(tuple(random_point(rng) for _ in range(r)))
        w = ProductPoint(tuple(random_point(rng) for _ in range(r)))
        R = float(rng.uniform(0.2, 3.0))
        ends = visual_endpoint(z, w)
        xi = ProductBoundaryPoint(tuple(perturbed_boundary(rng, e, scale=0.1) for e in ends))
        if not product_shadow_contains(z, w, R, xi):
            return Outcome(False, 0.0, {'in_shadow': False})
        k, beta = kappa(z, w), busemann_vec(xi, z, w)
        violation = float(max((k - 2.0 * R - beta).max(), (beta - k).max(), 0.0))
        return Outcome(violation > tol['sandwich'], violation, {
            'in_shadow': True,
            'z': z.to_list(),
            'w': w.to_list(),
            'xi': xi.to_json(),
            'R': R,
        })


@register
class DivFactorsVerifier(Verifier):
    lemma_id = LemmaId.DIV_FACTORS
    description = "factor-1 thresholds forcing large displacement in every factor stop growing in L"
    defaults = {}

    def check(self, rng, tol):
        base = load_group_spec("diagonal_schottky")
        spec = conjugate_spec(base, random_product_isometry(rng, base.r, spread=0.5))
        report = div_factors_report(spec, get_settings().DIV_FACTORS_LENGTH)
        finite = all(np.isfinite(report.thresholds))
        details = report.to_dict()
        details['conjugated_generators'] = {n: g.to_list() for n, g in spec.generators.items()}
        return Outcome(not (report.holds and finite), max(report.growth), details)


@register
class CartanSubadditiveVerifier(Verifier):
    lemma_id = LemmaId.CARTAN_SUBADDITIVE
    description = "kappa(gh) <= kappa(g) + kappa(h) entrywise on ball pairs"
    defaults = {'subadditive': 1e-9}

    def check(self, rng, tol):
        spec = load_group_spec("twisted_schottky")
        ball = enumerate_ball(spec, get_settings().VERIFY_BALL_LENGTH)
        first = rng.integers(0, len(ball), size=PAIRS_PER_TRIAL)
        second = rng.integers(0, len(ball), size=PAIRS_PER_TRIAL)
        products = np.einsum('psij,psjk->psik', ball.mats[first], ball.mats[second])
        z0 = np.array([p.z for p in spec.basepoint])
        joint = dist_array(z0[None, :], mobius_array(products, z0[None, :]))
        excess = joint - ball.cartan[first] - ball.cartan[second]
        worst = int(np.argmax(excess.max(axis=1)))
        score = float(excess.max())
        return Outcome(score > tol['subadditive'], score, {
            'g': ball.words[first[worst]],
            'h': ball.words[second[worst]],
            'kappa_gh': joint[worst].tolist(),
        })


@register
class JordanGrowthVerifier(Verifier):
    lemma_id = LemmaId.JORDAN_GROWTH
    description = "tau(g^k) = k tau(g) and kappa(g^n)/n approaches tau(g)"
    defaults = {'powers': 1e-9, 'growth': 1e-3, 'kmax': 10, 'n': 200, 'r': 2}

    def check(self, rng, tol):
        r, n = int(tol['r']), int(tol['n'])
        g = ProductIsometry(tuple(near_axis_loxodromic(rng) for _ in range(r)))
        z0 = ProductPoint.basepoint(r)
        tau = jordan_projection(GroupElement("g", g, kappa(z0, g(z0))))

        power_gap = 0.0
        for k in range(1, int(tol['kmax']) + 1):
            gk = g.power(k)
            tau_k = jordan_projection(GroupElement(f"g^{k}", gk, kappa(z0, gk(z0))))
            power_gap = max(power_gap, float(np.abs(tau_k - k * tau).max()))

        growth = kappa(z0, g.power(n)(z0)) / n
        norm = float(np.linalg.norm(tau))
        growth_gap = abs(norm - float(np.linalg.norm(growth)))
        failed = power_gap > tol['powers'] or growth_gap > tol['growth'] * norm + tol['growth']
        return Outcome(failed, max(power_gap, growth_gap), {
            'g': g.to_list(),
            'tau': tau.tolist(),
            'growth_rate': growth.tolist(),
            'power_gap': power_gap,
            'growth_gap': growth_gap,
        })
