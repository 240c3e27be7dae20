"""Verification cases and the checks run for each of them.

Every check returns a JSON-friendly detail dict on success and raises
CaseFailure (or a KRError) otherwise; run_case turns either into a CaseResult.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from app.kr.crystals import (
    RowCrystal,
    TensorCrystal,
    all_elements,
    classical_decomposition,
    generate_graph,
    kr_crystal,
)
from app.kr.energy import compute_R_H, find_bnatural, swap_factors, x_polynomials
from app.kr.errors import ConjectureViolation, CrystalModelError, GraphCapExceeded, KRError
from app.kr.fermionic import m_polynomial, rc_cocharge, top_weight
from app.kr.kleber import brute_force_configs, configs
from app.kr.qpoly import QPolynomial
from app.kr.root_data import (
    AffineType,
    Family,
    Weight,
    dominant_box,
    dynkin_data,
    floor_root_coords,
    parse_type,
)
from app.kr.tensor_spec import TensorSpec
from app.kr.virtual_crystals import (
    VirtualKR,
    embedding_commutes,
    embedding_map,
    epsilon_zero_formula,
    generate_V,
    is_aligned,
    is_self_dual,
    membership_set,
    self_dual_by_counts,
    virtual_R_closed,
    xv_polynomial,
)
from app.kr.virtual_kleber import (
    brute_force_virtual_configs,
    check_vacancy_scaling,
    devirtualize_rigged,
    embedding,
    lift_L,
    m_polynomial_via_virtual,
    psi_delta_check,
    psi_inverse,
    satisfies_vrc,
    selected_virtual_configs,
    virtual_rigged,
    virtualize,
)
from app.schemas import CaseResult

from .budget import Budget
from .figures import FIGURES, expected_rows, kleber_rows, virtual_kleber_rows

logger = logging.getLogger(__name__)


class CaseFailure(Exception):
    def __init__(self, failure_class: str, message: str, detail: Optional[Dict] = None):
        super().__init__(message)
        self.failure_class = failure_class
        self.detail = dict(detail or {}, message=message)


@dataclass(frozen=True)
class Case:
    check: str
    type: str = ""
    tensor: Tuple[Tuple[int, int], ...] = ()
    name: str = ""

    @property
    def key(self) -> str:
        if self.name:
            return f"{self.check}/{self.name}"
        tensor = " ".join(f"{r},{s}" for r, s in self.tensor)
        return f"{self.check}/{self.type}/{tensor}"

    @property
    def affine_type(self) -> AffineType:
        return parse_type(self.type)

    @property
    def spec(self) -> TensorSpec:
        return TensorSpec(self.tensor)


def _weights_text(weights: Iterable[Weight]) -> List[str]:
    return [",".join(map(str, w.coeffs)) for w in weights]


def tensor_specs(nodes: Sequence[int], max_total: int) -> List[TensorSpec]:
    """Nonempty multisets of factors (a, i), a in nodes, with sum of widths at most max_total."""
    pool = [(a, i) for a in nodes for i in range(1, max_total + 1)]
    found: List[TensorSpec] = []

    def extend(start: int, current: List[Tuple[int, int]], total: int):
        if current:
            found.append(TensorSpec(tuple(current)))
        for k in range(start, len(pool)):
            a, i = pool[k]
            if total + i <= max_total:
                extend(k, current + [(a, i)], total + i)

    extend(0, [], 0)
    return found


def weight_candidates(t: AffineType, L: TensorSpec) -> List[Weight]:
    """Dominant lambda <= top(B) with integral root coordinates of the difference."""
    top = top_weight(t, L)
    cartan = dynkin_data(t).classical_cartan
    found = {Weight(tau) for _, tau in dominant_box(cartan, top.coeffs, floor_root_coords(t, top))}
    return sorted(found, key=lambda w: w.coeffs)


def virtual_weight_candidates(x: AffineType, L: TensorSpec) -> List[Weight]:
    """lambda of X whose image Psi(lambda) is a candidate weight of the lifted tensor."""
    emb = embedding(x)
    found = set()
    for tau in weight_candidates(emb.y_type, lift_L(x, L)):
        lam = psi_inverse(x, tau)
        if lam is not None:
            found.add(lam)
    return sorted(found, key=lambda w: w.coeffs)


def fermionic_candidates(t: AffineType, L: TensorSpec) -> List[Weight]:
    if t.is_simply_laced_untwisted:
        return weight_candidates(t, L)
    return virtual_weight_candidates(t, L)


def _config_text(nus) -> List[str]:
    return sorted(str(nu.partitions) for nu in nus)


def check_figure_kleber(case: Case) -> Dict:
    figure = FIGURES[case.name]
    count, rows = kleber_rows(figure)
    return _compare_figure(figure, count, rows)


def check_figure_virtual(case: Case) -> Dict:
    figure = FIGURES[case.name]
    count, rows = virtual_kleber_rows(figure)
    return _compare_figure(figure, count, rows)


def _compare_figure(figure, count: int, rows: List) -> Dict:
    expected = expected_rows(figure)
    if count != figure.node_count or rows != expected:
        raise CaseFailure("mismatch", f"{figure.name} differs from the worked example", {
            "nodes": count,
            "expected_nodes": figure.node_count,
            "missing": [repr(r) for r in expected if r not in rows],
            "unexpected": [repr(r) for r in rows if r not in expected],
        })
    return {"nodes": count, "rows": len(rows)}


def check_kleber_oracle(case: Case) -> Dict:
    """Kleber tree configurations agree with exhaustive enumeration at every lambda."""
    t, L = case.affine_type, case.spec
    checked = 0
    for lam in weight_candidates(t, L):
        from_tree = configs(t, L, lam)
        oracle = brute_force_configs(t, L, lam)
        if from_tree != oracle:
            raise CaseFailure("mismatch", f"C(B, {lam}) differs from brute force", {
                "weight": list(lam.coeffs),
                "tree": _config_text(from_tree),
                "oracle": _config_text(oracle),
            })
        checked += len(oracle)
    return {"configurations": checked}


def check_virtual_oracle(case: Case) -> Dict:
    """Selected virtual Kleber nodes agree with filtered exhaustive enumeration."""
    x, L = case.affine_type, case.spec
    if not psi_delta_check(x):
        raise CaseFailure("mismatch", f"Psi does not scale the null root of {x}")
    checked = 0
    for lam in virtual_weight_candidates(x, L):
        selected = selected_virtual_configs(x, L, lam)
        oracle = brute_force_virtual_configs(x, L, lam)
        if selected != oracle:
            raise CaseFailure("mismatch", f"C^v(B, {lam}) differs from brute force", {
                "weight": list(lam.coeffs),
                "tree": _config_text(selected),
                "oracle": _config_text(oracle),
            })
        checked += len(oracle)
    return {"configurations": checked}


def _classical_multiplicities(t: AffineType, L: TensorSpec) -> Optional[Dict[Weight, int]]:
    """Multiplicity of each B(lambda) in B, from the crystal when every factor is a row."""
    if any(r != 1 for r, _ in L.factors):
        return None
    factors = [kr_crystal(t, r, s) for r, s in L.factors]
    return {lam: x_poly.at_one() for lam, x_poly in x_polynomials(factors).items()}


def check_rigged_virtual(case: Case) -> Dict:
    """Virtualization of rigged configurations and M against its virtual form.

    A_2n^(2)dag has no direct M; there the virtual sum is checked for the
    virtual conditions, integral exponents and M(1) against the classical
    decomposition of B.
    """
    x, L = case.affine_type, case.spec
    emb = embedding(x)
    dag = x.family == Family.A2EVEN_DAG
    multiplicities = _classical_multiplicities(x, L) if dag else None
    candidates = virtual_weight_candidates(x, L)
    if multiplicities is not None and not set(multiplicities) <= set(candidates):
        raise CaseFailure("mismatch", "a classical component has no candidate weight", {
            "missing": _weights_text(set(multiplicities) - set(candidates))})
    rigged = 0
    for lam in candidates:
        for nu_hat in selected_virtual_configs(x, L, lam):
            if not satisfies_vrc(x, nu_hat):
                raise CaseFailure("mismatch", "selected configuration violates the virtual conditions",
                                  {"configuration": str(nu_hat.partitions)})
            if not dag and not check_vacancy_scaling(x, L, nu_hat):
                raise CaseFailure("mismatch", "virtual vacancy numbers do not scale by gamma",
                                  {"configuration": str(nu_hat.partitions)})
            for rc_hat in virtual_rigged(x, L, nu_hat):
                rc = devirtualize_rigged(x, rc_hat)
                if virtualize(x, rc) != rc_hat:
                    raise CaseFailure("mismatch", "virtualize does not invert devirtualize",
                                      {"configuration": str(nu_hat.partitions)})
                if not dag and rc_cocharge(emb.y_type, rc_hat) != emb.gamma[0] * rc_cocharge(x, rc):
                    raise CaseFailure("mismatch", "virtual cocharge is not gamma_0 times the cocharge", {
                        "configuration": str(nu_hat.partitions),
                        "virtual": str(rc_cocharge(emb.y_type, rc_hat)),
                        "cocharge": str(rc_cocharge(x, rc)),
                    })
                rigged += 1
        virtual = m_polynomial_via_virtual(x, L, lam)
        if dag:
            if multiplicities is not None and virtual.at_one() != multiplicities.get(lam, 0):
                raise CaseFailure("mismatch", f"M(1) differs from the multiplicity of {lam}", {
                    "weight": list(lam.coeffs), "M": str(virtual),
                    "multiplicity": multiplicities.get(lam, 0)})
            continue
        direct = m_polynomial(x, L, lam)
        if direct != virtual:
            raise CaseFailure("mismatch", f"M and its virtual form differ at {lam}", {
                "weight": list(lam.coeffs), "direct": str(direct), "virtual": str(virtual)})
    return {"rigged": rigged}


def _row_vectors(crystal: RowCrystal) -> Set[Tuple[int, ...]]:
    """Every count vector accepted by is_element, enumerated without the operators."""
    found = set()
    for total in range(crystal.s + 1):
        for combo in _compositions(total, crystal.size):
            if crystal.is_element(combo):
                found.add(combo)
    return found


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _expected_decomposition(row: RowCrystal, r: int) -> Dict[Weight, int]:
    n, s = row.affine_type.n, row.s
    if row.lengths == "fixed":
        widths = [s]
    elif row.lengths == "any":
        widths = list(range(s + 1))
    else:
        widths = [k for k in range(s + 1) if (s - k) % 2 == 0]
    # the letter 1 of B_1 has weight 2 Lambda_1
    unit = 2 if row.kind == "B" and n == 1 else 1
    return {Weight.fundamental(n, r) * (unit * k): 1 for k in widths}


def check_crystal(case: Case) -> Dict:
    """B^{r,s}: connectedness, the partial inverse, weights and the classical decomposition."""
    t = case.affine_type
    (r, s), = case.tensor
    crystal = kr_crystal(t, r, s)
    graph = generate_graph(crystal)
    row = crystal if isinstance(crystal, RowCrystal) else crystal.base
    declared = _row_vectors(row)
    if set(graph.elements()) != declared:
        raise CaseFailure("mismatch", f"{crystal} is not connected from u(B)", {
            "reached": len(graph), "declared": len(declared)})
    cartan = dynkin_data(t).classical_cartan
    for source, target, i in graph.arcs():
        if i == 0:
            continue
        drop = [a - b for a, b in zip(crystal.weight(source).coeffs, crystal.weight(target).coeffs)]
        if drop != [cartan[a][i - 1] for a in range(t.n)]:
            raise CaseFailure("mismatch", f"f_{i} does not lower the weight by alpha_{i}",
                              {"element": crystal.label(source)})
    decomposition = classical_decomposition(crystal)
    expected = _expected_decomposition(row, r)
    if decomposition != expected:
        raise CaseFailure("mismatch", f"classical decomposition of {crystal}", {
            "found": sorted(_weights_text(decomposition)),
            "expected": sorted(_weights_text(expected))})
    return {"elements": len(graph), "arcs": len(graph.arcs())}


def check_virtual_crystal(case: Case) -> Dict:
    """V^{1,s}: generated set, explicit membership, the embedding and alignment agree."""
    x = case.affine_type
    (_, s), = case.tensor
    vkr = VirtualKR(x, s)
    generated = generate_V(vkr)
    described = membership_set(vkr)
    if generated != described:
        raise CaseFailure("mismatch", "generated virtual crystal differs from its description", {
            "generated": len(generated), "described": len(described)})
    if set(embedding_map(vkr).values()) != generated:
        raise CaseFailure("mismatch", "embedding image differs from V")
    if not embedding_commutes(vkr):
        raise CaseFailure("mismatch", "embedding does not intertwine the operators")
    if not all(is_aligned(vkr, v) for v in generated):
        raise CaseFailure("mismatch", "V contains an element that is not aligned")
    if vkr.is_a_chain:
        ambient = vkr.ambient
        for v in all_elements(ambient):
            if is_self_dual(v) != self_dual_by_counts(v):
                raise CaseFailure("mismatch", "self-duality tests disagree", {"element": ambient.label(v)})
            if is_self_dual(v) and ambient.epsilon(v, 0) != epsilon_zero_formula(v):
                raise CaseFailure("mismatch", "eps_0 of a self-dual element", {"element": ambient.label(v)})
    return {"elements": len(generated)}


def check_energy(case: Case) -> Dict:
    """R is an involution, H is R-invariant and normalized, and b-natural exists."""
    t = case.affine_type
    (_, s_left), (_, s_right) = case.tensor
    left, right = kr_crystal(t, 1, s_left), kr_crystal(t, 1, s_right)
    forward = compute_R_H(left, right)
    backward = compute_R_H(right, left)
    if forward.H((left.highest(), right.highest())) != 0:
        raise CaseFailure("mismatch", "H(u (x) u) is not 0")
    for b, image in forward.table.items():
        if backward(image) != b:
            raise CaseFailure("mismatch", "R is not an involution", {"element": str(b)})
        if backward.H(image) != forward.H(b):
            raise CaseFailure("mismatch", "H is not R-invariant", {"element": str(b)})
        if s_left == s_right and image != b:
            raise CaseFailure("mismatch", "R is not the identity on B (x) B", {"element": str(b)})
    naturals = [left.label(find_bnatural(left)), right.label(find_bnatural(right))]
    values = sorted(set(forward.energy.values()))
    return {"elements": len(forward.table), "energies": values, "b_natural": naturals}


def check_yang_baxter(case: Case) -> Dict:
    t = case.affine_type
    factors = [kr_crystal(t, r, s) for r, s in case.tensor]
    tensor = TensorCrystal(tuple(factors))
    for b in all_elements(tensor):
        start = list(zip(factors, b))
        lhs = swap_factors(swap_factors(swap_factors(start, 1), 2), 1)
        rhs = swap_factors(swap_factors(swap_factors(start, 2), 1), 2)
        if lhs != rhs:
            raise CaseFailure("mismatch", "Yang-Baxter equation fails", {"element": tensor.label(b)})
    return {"elements": len(all_elements(tensor))}


def _classify(x_poly: QPolynomial, m_poly: QPolynomial) -> str:
    inverted = x_poly.invert()
    if not inverted.is_zero() and not m_poly.is_zero():
        if inverted.shift(m_poly.low_degree() - inverted.low_degree()) == m_poly:
            return "offset"
    return "mismatch"


def check_x_equals_m(case: Case) -> Dict:
    """X(B, lambda; q) = M(B, lambda; q^-1) at every lambda with paths or configurations."""
    t, L = case.affine_type, case.spec
    factors = [kr_crystal(t, r, s) for r, s in case.tensor]
    by_weight = x_polynomials(factors)
    weights = sorted(set(by_weight) | set(fermionic_candidates(t, L)), key=lambda w: w.coeffs)
    compared = {}
    for lam in weights:
        x_poly = by_weight.get(lam, QPolynomial())
        m_poly = m_polynomial(t, L, lam)
        if x_poly.invert() != m_poly:
            raise CaseFailure(_classify(x_poly, m_poly), f"X != M at {lam}", {
                "weight": list(lam.coeffs), "X": str(x_poly), "M": str(m_poly)})
        if not x_poly.is_zero():
            compared[",".join(map(str, lam.coeffs))] = str(x_poly)
    return {"weights": compared}


def check_xv_equals_x(case: Case) -> Dict:
    """The virtual one-dimensional sum agrees with X, and R-hat preserves V (x) V'."""
    x = case.affine_type
    widths = [s for _, s in case.tensor]
    for s_left, s_right in zip(widths, widths[1:]):
        if not virtual_R_closed(x, s_left, s_right):
            raise CaseFailure("mismatch", f"R-hat leaves V^(1,{s_left}) (x) V^(1,{s_right})")
    factors = [kr_crystal(x, r, s) for r, s in case.tensor]
    by_weight = x_polynomials(factors)
    for lam, x_poly in sorted(by_weight.items(), key=lambda item: item[0].coeffs):
        xv = xv_polynomial(x, case.tensor, lam)
        if xv != x_poly:
            raise CaseFailure("mismatch", f"X^v != X at {lam}", {
                "weight": list(lam.coeffs), "X": str(x_poly), "Xv": str(xv)})
    return {"weights": len(by_weight)}


CHECKS: Dict[str, Callable[[Case], Dict]] = {
    "figure_kleber": check_figure_kleber,
    "figure_virtual": check_figure_virtual,
    "kleber_oracle": check_kleber_oracle,
    "virtual_oracle": check_virtual_oracle,
    "rigged_virtual": check_rigged_virtual,
    "crystal": check_crystal,
    "virtual_crystal": check_virtual_crystal,
    "energy": check_energy,
    "yang_baxter": check_yang_baxter,
    "x_equals_m": check_x_equals_m,
    "xv_equals_x": check_xv_equals_x,
}


def run_case(case: Case) -> CaseResult:
    """Run one case; failures are reported, never raised."""
    try:
        detail = CHECKS[case.check](case)
    except CaseFailure as e:
        return _failed(case, e.failure_class, e.detail)
    except ConjectureViolation as e:
        return _failed(case, "conjecture", dict(e.detail, message=str(e)))
    except GraphCapExceeded as e:
        return _failed(case, "cap", {"message": str(e)})
    except CrystalModelError as e:
        return _failed(case, "model", {"message": str(e)})
    except KRError as e:
        return _failed(case, "error", {"message": f"{type(e).__name__}: {e}"})
    except Exception as e:
        logger.exception("case %s crashed", case.key)
        return _failed(case, "error", {"message": f"{type(e).__name__}: {e}"})
    return CaseResult(key=case.key, check=case.check, passed=True, detail=detail)


def _failed(case: Case, failure_class: str, detail: Dict) -> CaseResult:
    logger.info("case %s failed (%s)", case.key, failure_class)
    return CaseResult(key=case.key, check=case.check, passed=False,
                      failure_class=failure_class, detail=detail)


def _row_widths(t: AffineType, max_s: int) -> List[Tuple[Tuple[int, int], ...]]:
    rows = [((1, s),) for s in range(1, max_s + 1)]
    if t.family == Family.A1 and t.n > 1:
        rows += [((t.n, s),) for s in range(1, max_s + 1)]
    return rows


def _row_tensors(max_factors: int, max_s: int) -> List[Tuple[Tuple[int, int], ...]]:
    found = []
    for length in range(1, max_factors + 1):
        for widths in product(range(1, max_s + 1), repeat=length):
            found.append(tuple((1, s) for s in widths))
    return found


def _virtual_ok(t: AffineType) -> bool:
    return not (t.family == Family.A2EVEN_DAG and t.n < 2)


def build_cases(budget: Budget) -> List[Case]:
    """Every case the budget asks for, sorted by key."""
    cases: List[Case] = []
    if budget.figures:
        cases.append(Case("figure_kleber", name="kleber-A3"))
        cases.append(Case("figure_virtual", name="virtual-kleber-C2"))
    for label in budget.kleber_types:
        t = parse_type(label)
        for spec in tensor_specs(t.classical_nodes, budget.kleber_total(t.label)):
            cases.append(Case("kleber_oracle", t.label, spec.factors))
    for label in budget.virtual_types:
        t = parse_type(label)
        if not _virtual_ok(t):
            continue
        for spec in tensor_specs(t.classical_nodes, budget.virtual_total(t.label)):
            cases.append(Case("virtual_oracle", t.label, spec.factors))
        for spec in tensor_specs(t.classical_nodes, budget.rigged_max_total):
            cases.append(Case("rigged_virtual", t.label, spec.factors))
    for label in budget.crystal_types:
        t = parse_type(label)
        for tensor in _row_widths(t, budget.crystal_max_s):
            cases.append(Case("crystal", t.label, tensor))
    for label in budget.virtual_crystal_types:
        t = parse_type(label)
        if not _virtual_ok(t):
            continue
        for s in range(1, budget.virtual_crystal_max_s + 1):
            cases.append(Case("virtual_crystal", t.label, ((1, s),)))
    for label in budget.energy_types:
        t = parse_type(label)
        for tensor in _row_tensors(2, budget.energy_max_s):
            if len(tensor) == 2:
                cases.append(Case("energy", t.label, tensor))
    for label in budget.yang_baxter_types:
        t = parse_type(label)
        for tensor in _row_tensors(3, 2):
            if len(tensor) == 3:
                cases.append(Case("yang_baxter", t.label, tensor))
    for label in budget.xm_types:
        t = parse_type(label)
        if not t.is_simply_laced_untwisted and not _virtual_ok(t):
            continue
        for tensor in _row_tensors(budget.xm_max_factors, budget.xm_max_s):
            cases.append(Case("x_equals_m", t.label, tensor))
    for label in budget.xv_types:
        t = parse_type(label)
        if not _virtual_ok(t):
            continue
        for tensor in _row_tensors(budget.xv_max_factors, budget.xm_max_s):
            cases.append(Case("xv_equals_x", t.label, tensor))
    return sorted(set(cases), key=lambda case: case.key)


__all__ = [
    "CHECKS",
    "Case",
    "CaseFailure",
    "build_cases",
    "fermionic_candidates",
    "run_case",
    "tensor_specs",
    "virtual_weight_candidates",
    "weight_candidates",
]
