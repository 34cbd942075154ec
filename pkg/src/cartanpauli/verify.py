"""Named verification suites.

Every check compares canonical exact objects (DiffOp matrices or FormVectors)
for structural equality; nothing is sampled numerically.  Reports are
deterministic for a fixed ``(suite, n, seed, H, beta)`` and list their checks
sorted by label.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List

from .cartan import (
    OperatorMatrix,
    build_charge,
    codifferential,
    codifferential_via_hodge,
    evolution_operator,
    exterior_derivative,
    form_as_operator,
    hamiltonian_contraction,
    hodge_star,
    hodge_star_bruteforce,
    interior_contraction,
    laplacian,
    lie_derivative,
    liouvillian,
)
from .errors import DimensionError, MissingInputError, ParityError
from .exact_arith import I, GaussianRational, Polynomial, var_name
from .forms import FormVector, VectorField, form_from_spec, form_to_spec, symplectic_form
from .grassmann import (
    basis_from_linear,
    basis_index,
    c_hat,
    cbar_hat,
    dimension,
    oracle_apply,
    state_to_vector,
)
from .pauli_kron import SparseScalarMatrix
from .report import VerificationReport
from .sampling import random_form, random_hamiltonian, random_vector_field
from .weyl import DiffOp

SUITES = ("grassmann", "charges", "susy", "cartan", "hodge", "geometry")
DEFAULT_MAX_N = 3
DEFAULT_SAMPLES = 20


def _check_n(n: int, max_n: int):
    if not isinstance(n, int) or n < 1:
        raise DimensionError(f"need n >= 1 degrees of freedom, got {n!r}")
    if n > max_n:
        raise DimensionError(f"n={n} exceeds the configured maximum {max_n} (matrix dimension {4 ** n})")


def _where(a, b) -> str:
    """Locate the first differing entry of two operator matrices or forms."""
    if isinstance(a, OperatorMatrix):
        for key in sorted(set(a.entries) | set(b.entries)):
            if a[key] != b[key]:
                return f"entry {key}: {a[key]} != {b[key]}"
        return "matrices differ"
    if isinstance(a, FormVector):
        for i, (x, y) in enumerate(zip(a.components, b.components)):
            if x != y:
                return f"component {basis_from_linear(i, a.n).label}: {x} != {y}"
        return "forms differ"
    if isinstance(a, SparseScalarMatrix):
        for key in sorted(set(a.entries) | set(b.entries)):
            if a[key] != b[key]:
                return f"entry {key}: {a[key]} != {b[key]}"
    return f"{a} != {b}"


def _equal(a, b):
    return (True, None) if a == b else (False, _where(a, b))


def _zero(a: OperatorMatrix):
    return _equal(a, OperatorMatrix.zero(a.n))


# -- direct (matrix-free) Cartan calculus on monomials -----------------------------------


def exterior_derivative_direct(psi: FormVector) -> FormVector:
    """``d(f c^S) = sum_k (d_k f) c^k c^S``, assembled on monomials."""
    spec = []
    for subset, coeff in form_to_spec(psi):
        for k in range(1, psi.nvars + 1):
            df = coeff.partial(k)
            if df:
                spec.append(((k,) + subset, df))
    return form_from_spec(spec, psi.n)


def interior_contraction_direct(v: VectorField, psi: FormVector) -> FormVector:
    """``iota_V(c^(s1)...c^(sp)) = sum_j (-1)^(j-1) V^(s_j) c^(S without s_j)``."""
    spec = []
    for subset, coeff in form_to_spec(psi):
        for j, s in enumerate(subset):
            comp = v.components[s - 1]
            if comp:
                term = coeff * comp
                spec.append((subset[:j] + subset[j + 1:], term if j % 2 == 0 else -term))
    return form_from_spec(spec, psi.n)


def lie_derivative_direct(h: Polynomial, psi: FormVector) -> FormVector:
    """Cartan's formula ``d iota_h + iota_h d`` on monomials."""
    field = symplectic_form(psi.n).hamiltonian_vector_field(h)
    return exterior_derivative_direct(interior_contraction_direct(field, psi)) + interior_contraction_direct(
        field, exterior_derivative_direct(psi)
    )


# -- suites -------------------------------------------------------------------------------


def _grassmann_suite(report: VerificationReport, n: int):
    src = "Grassmann anticommutation relations"
    nvars = 2 * n
    dim = dimension(n)
    c = {k: c_hat(k, n) for k in range(1, nvars + 1)}
    cb = {k: cbar_hat(k, n) for k in range(1, nvars + 1)}
    zero = SparseScalarMatrix.zero(dim)
    ident = SparseScalarMatrix.identity(dim)

    def anti(x, y):
        return x @ y + y @ x

    for a in range(1, nvars + 1):
        for b in range(a, nvars + 1):
            na, nb = var_name(a), var_name(b)
            report.run(f"[c^{na},c^{nb}]+ = 0", src, lambda a=a, b=b: _equal(anti(c[a], c[b]), zero))
            report.run(f"[cbar_{na},cbar_{nb}]+ = 0", src, lambda a=a, b=b: _equal(anti(cb[a], cb[b]), zero))
    for a in range(1, nvars + 1):
        for b in range(1, nvars + 1):
            expected = ident if a == b else zero
            rhs = "1" if a == b else "0"
            report.run(
                f"[c^{var_name(a)},cbar_{var_name(b)}]+ = {rhs}",
                src,
                lambda a=a, b=b, e=expected: _equal(anti(c[a], cb[b]), e),
            )
    for k in range(1, nvars + 1):
        report.run(f"cbar_{var_name(k)} = transpose(c^{var_name(k)})", "Grassmann hermiticity",
                   lambda k=k: _equal(cb[k], c[k].T))
    # exhaustive agreement with the monomial oracle
    for kind, mats in (("c", c), ("cbar", cb)):
        for k in range(1, nvars + 1):

            def agree(kind=kind, k=k, m=mats[k]):
                for linear in range(dim):
                    subset = basis_from_linear(linear, n).subset
                    via_oracle = state_to_vector(oracle_apply(kind, k, {subset: GaussianRational(1)}, n), n)
                    via_matrix = m @ state_to_vector({subset: GaussianRational(1)}, n)
                    if via_oracle != via_matrix:
                        return False, f"basis state {basis_from_linear(linear, n).label}"
                return True

            name = f"c^{var_name(k)}" if kind == "c" else f"cbar_{var_name(k)}"
            report.run(f"oracle agreement {name} on all {dim} basis states", "monomial oracle", agree)


def _charges_suite(report: VerificationReport, n: int):
    src = "charge algebra"
    g = {k: build_charge(k, n=n) for k in ("Q", "Qbar", "Qf", "K", "Kbar")}
    one = OperatorMatrix.identity(n)

    def br(a, b):
        return g[a].graded_commutator(g[b])

    relations = [
        ("[Q,Q]+ = 0", lambda: _zero(br("Q", "Q"))),
        ("[Qbar,Qbar]+ = 0", lambda: _zero(br("Qbar", "Qbar"))),
        ("[Q,Qbar]+ = 0", lambda: _zero(br("Q", "Qbar"))),
        ("[Qf,K]- = 2K", lambda: _equal(br("Qf", "K"), g["K"].scale(2))),
        ("[Qf,Kbar]- = -2Kbar", lambda: _equal(br("Qf", "Kbar"), g["Kbar"].scale(-2))),
        (f"[K,Kbar]- = Qf - {n}", lambda: _equal(br("K", "Kbar"), g["Qf"] - one.scale(n))),
        ("[Qf,Q]- = Q", lambda: _equal(br("Qf", "Q"), g["Q"])),
        ("[Qf,Qbar]- = -Qbar", lambda: _equal(br("Qf", "Qbar"), g["Qbar"].scale(-1))),
        ("[K,Q]- = 0", lambda: _zero(br("K", "Q"))),
        ("[K,Qbar]- = Q", lambda: _equal(br("K", "Qbar"), g["Q"])),
        ("[Kbar,Q]- = Qbar", lambda: _equal(br("Kbar", "Q"), g["Qbar"])),
        ("[Kbar,Qbar]- = 0", lambda: _zero(br("Kbar", "Qbar"))),
    ]
    for label, fn in relations:
        report.run(label, src, fn)
    report.run("Q = d", "BRS charge is the exterior derivative", lambda: _equal(g["Q"], exterior_derivative(n)))

    def eigen():
        for linear in range(dimension(n)):
            b = basis_from_linear(linear, n)
            psi = FormVector.basis(b.subset, n, Polynomial.var(2 * n, 1) + Polynomial.const(2 * n, 1))
            if g["Qf"].apply(psi) != psi.scale(b.degree):
                return False, f"basis {b.label}"
        return True

    report.run("Qf psi = p psi on homogeneous p-forms", "form number", eigen)


def _susy_suite(report: VerificationReport, n: int, h: Polynomial, beta):
    src = "supersymmetry algebra"
    beta = GaussianRational.coerce(beta)
    qh = build_charge("QH", h, beta, n)
    qhb = build_charge("QHbar", h, beta, n)
    ham = evolution_operator(h, n)
    report.run("[QH,QHbar]+ = 2 i beta H", src, lambda: _equal(qh.graded_commutator(qhb), ham.scale(I * 2 * beta)))
    report.run("[QH,H]- = 0", src, lambda: _zero(qh.graded_commutator(ham)))
    report.run("[QHbar,H]- = 0", src, lambda: _zero(qhb.graded_commutator(ham)))
    report.run("[QH,QH]+ = 0", src, lambda: _zero(qh.graded_commutator(qh)))
    report.run("[QHbar,QHbar]+ = 0", src, lambda: _zero(qhb.graded_commutator(qhb)))
    report.run("[Q,H]- = 0", "BRS invariance of the evolution", lambda: _zero(build_charge("Q", n=n).graded_commutator(ham)))
    report.run("[Qbar,H]- = 0", "anti-BRS invariance of the evolution",
               lambda: _zero(build_charge("Qbar", n=n).graded_commutator(ham)))


def _hamilton_orientation(n: int, h: Polynomial):
    """The flow of ``h`` must give ``dq_i/dt = dH/dp_i`` and ``dp_i/dt = -dH/dq_i``."""
    lie = lie_derivative(h, n)
    for i in range(1, n + 1):
        p, q = 2 * i - 1, 2 * i
        for k, expected in ((q, h.partial(p)), (p, -h.partial(q))):
            zero_form = FormVector.basis((), n, Polynomial.var(2 * n, k))
            got = lie.apply(zero_form)[0]
            if got != expected:
                return False, f"L_h {var_name(k)} = {got}, Hamilton's equations give {expected}"
    return True


def _cartan_suite(report: VerificationReport, n: int, h: Polynomial, rng: random.Random):
    src = "Cartan calculus"
    d = exterior_derivative(n)
    delta = codifferential(n)
    report.run("d o d = 0", src, lambda: _zero(d.compose(d)))
    report.run("delta o delta = 0", src, lambda: _zero(delta.compose(delta)))
    report.run("[d,delta]+ = Laplacian", src, lambda: _equal(d.graded_commutator(delta), laplacian(n)))

    def flat_laplacian():
        lap = laplacian(n)
        expected = DiffOp.zero(2 * n)
        for k in range(1, 2 * n + 1):
            expected = expected - DiffOp.partial(2 * n, k, 2)
        bracket = d.graded_commutator(delta)
        target = OperatorMatrix(n, {(i, i): expected for i in range(dimension(n))})
        return _equal(bracket, target) if lap == target else (False, "Laplacian builder differs from -sum d_k^2")

    report.run("Laplacian = -sum_k d_k^2 * 1", src, flat_laplacian)
    if n <= 2:
        report.run("delta = -* d *", "Hodge duality", lambda: _equal(codifferential_via_hodge(n), delta))
        report.run("L_h = d iota_h + iota_h d = i H", "Lie derivative along the Hamiltonian flow",
                   lambda: _equal(lie_derivative(h, n), evolution_operator(h, n).scale(I)))
        report.run("L_h = [d, iota_h]+", "Cartan formula as a graded bracket",
                   lambda: _equal(d.graded_commutator(hamiltonian_contraction(h, n)), lie_derivative(h, n)))
        report.run("L_h on 0-forms = Liouvillian times i", "Liouville operator",
                   lambda: _equal(lie_derivative(h, n).entries.get((0, 0)), liouvillian(h, n).scale(I)))
        report.run("Hamilton's equations orientation", "symplectic orientation", lambda: _hamilton_orientation(n, h))
        v = random_vector_field(rng, n)
        report.run("iota_V o iota_V = 0 (random V)", src, lambda: _zero(interior_contraction(v).compose(interior_contraction(v))))
        report.run("iota_V on 0-forms = 0 (random V)", src,
                   lambda: all(key[1] != 0 for key in interior_contraction(v).entries))


def _hodge_suite(report: VerificationReport, n: int):
    src = "Hodge star"
    star = hodge_star(n)
    report.run("Hodge star matches the epsilon-tensor sum", src, lambda: _equal(star, hodge_star_bruteforce(n)))

    def star_star():
        twice = star @ star
        for linear in range(dimension(n)):
            p = len(basis_from_linear(linear, n).subset)
            expected = SparseScalarMatrix(dimension(n), 1, {(linear, 0): (-1) ** p})
            col = twice @ SparseScalarMatrix(dimension(n), 1, {(linear, 0): 1})
            if col != expected:
                return False, f"basis {basis_from_linear(linear, n).label}"
        return True

    report.run("** = (-1)^p on p-forms", src, star_star)
    top = basis_index(range(1, 2 * n + 1), n).linear
    report.run("*1 = (-1)^n top monomial", "orientation", lambda: star[(top, 0)] == 1 if n % 2 == 0 else star[(top, 0)] == -1)
    if n == 1:
        display = SparseScalarMatrix.from_dense([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])
        report.run("n=1 Hodge matrix", src, lambda: _equal(star, display))
    if n <= 2:
        report.run("delta = -* d *", "Hodge duality", lambda: _equal(codifferential_via_hodge(n), codifferential(n)))


def commutator_geometry_check(
    f: FormVector, v: VectorField, h: Polynomial, n: int | None = None, seed: int | None = None
) -> VerificationReport:
    """Check ``dF = [Q,F]``, ``iota_V F = [V,F]`` and ``L_h F = [iH,F]`` for one homogeneous form."""
    n = f.n if n is None else n
    if f.n != n or v.n != n:
        raise DimensionError("form, vector field and n disagree")
    fhat = form_as_operator(f)
    if fhat.parity is None:
        raise ParityError("commutator_geometry_check needs a homogeneous (definite-parity) form")
    report = VerificationReport("geometry", n, seed)
    _geometry_checks(report, f, fhat, v, h, n, "", _geometry_ops(n, v, h))
    return report


def _geometry_ops(n, v, h):
    return {
        "Q": build_charge("Q", n=n),
        "V": interior_contraction(v),
        "iH": evolution_operator(h, n).scale(I),
    }


def _geometry_checks(report, f, fhat, v, h, n, tag, ops):
    vac = FormVector.basis((), n)
    targets = {
        "Q": ("dF", exterior_derivative_direct(f)),
        "V": ("iota_V F", interior_contraction_direct(v, f)),
        "iH": ("L_h F", lie_derivative_direct(h, f)),
    }
    for name, op in ops.items():
        lhs_name, expected = targets[name]
        report.run(
            f"{lhs_name} = [{name},F] on 1{tag}",
            "bracket realization of Cartan operations",
            lambda op=op, e=expected: _equal(op.graded_commutator(fhat).apply(vac), e),
        )
        report.run(
            f"[{name},F] = ({lhs_name})^ as operators{tag}",
            "bracket realization of Cartan operations",
            lambda op=op, e=expected: _equal(op.graded_commutator(fhat), form_as_operator(e)),
        )


def _geometry_suite(report, n, h, rng, samples):
    v = random_vector_field(rng, n)
    ops = _geometry_ops(n, v, h)
    vac = FormVector.basis((), n)
    for degree in range(2 * n + 1):
        for s in range(samples):
            f = random_form(rng, n, degree)
            fhat = form_as_operator(f)
            report.run(f"F acts on 1 as F (deg {degree} #{s:02d})", "forms as operators",
                       lambda f=f, fhat=fhat: _equal(fhat.apply(vac), f))
            _geometry_checks(report, f, fhat, v, h, n, f" (deg {degree} #{s:02d})", ops)


def run_suite(
    kind: str,
    n: int,
    h: Polynomial | None = None,
    beta=None,
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    max_n: int = DEFAULT_MAX_N,
) -> VerificationReport:
    if kind not in SUITES:
        raise ValueError(f"unknown suite {kind!r}; choose from {', '.join(SUITES)}")
    _check_n(n, max_n)
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    if h is not None and h.nvars != 2 * n:
        raise DimensionError(f"Hamiltonian in {h.nvars} variables, expected {2 * n}")
    rng = random.Random(f"{kind}:{n}:{seed}")
    report = VerificationReport(kind, n, seed)
    if kind == "grassmann":
        _grassmann_suite(report, n)
    elif kind == "charges":
        _charges_suite(report, n)
    elif kind == "susy":
        if h is None:
            raise MissingInputError("the susy suite needs a Hamiltonian")
        _susy_suite(report, n, h, Fraction(1) if beta is None else beta)
    elif kind == "hodge":
        _hodge_suite(report, n)
    else:
        if h is None:
            h = random_hamiltonian(rng, n)
        if kind == "cartan":
            _cartan_suite(report, n, h, rng)
        else:
            _geometry_suite(report, n, h, rng, samples)
    return report.sorted()


# -- intertwining (one degree of freedom) ----------------------------------------------------------


def intertwining_operators(h: Polynomial, beta=1):
    """``Q^-`` and ``Q^+`` for n=1 as ``[q-slot, p-slot]`` lists of DiffOps.

    ``Q^-_k = d_k - beta d_k H`` and ``Q^+ = (d_p + beta d_p H, -(d_q + beta d_q H))``.
    """
    beta = GaussianRational.coerce(beta)
    dq, dp = DiffOp.partial(2, 2), DiffOp.partial(2, 1)
    hq, hp = h.partial(2), h.partial(1)
    minus = [dq - DiffOp.multiplication(hq.scale(beta)), dp - DiffOp.multiplication(hp.scale(beta))]
    plus = [dp + DiffOp.multiplication(hp.scale(beta)), -(dq + DiffOp.multiplication(hq.scale(beta)))]
    return minus, plus


def intertwine_check(h: Polynomial, psi0: Polynomial, n: int = 1, beta=1) -> VerificationReport:
    """``H1 o Q^- = Q^- o L`` and ``L o Q^+ = Q^+ o H1`` on the one-form block."""
    if n != 1:
        raise DimensionError("the intertwining block structure is stated for n=1 only")
    if h.nvars != 2 or psi0.nvars != 2:
        raise DimensionError("Hamiltonian and psi0 must be polynomials in p, q")
    src = "intertwining of the Liouvillian with the one-form block"
    report = VerificationReport("intertwine", 1)
    ham = evolution_operator(h, 1)
    liou = liouvillian(h, 1)
    # one-form block: rows/cols 1 (c^q) and 2 (c^p)
    block = [[ham[(r, c)] for c in (1, 2)] for r in (1, 2)]
    minus, plus = intertwining_operators(h, beta)
    zero = DiffOp.zero(2)

    def lhs_minus(k):
        total = zero
        for j in range(2):
            total = total + block[k][j].compose(minus[j])
        return total

    def rhs_plus(j):
        total = zero
        for k in range(2):
            total = total + plus[k].compose(block[k][j])
        return total

    for k, slot in enumerate(("q", "p")):
        report.run(f"H1 o Q- = Q- o L ({slot} row, operator)", src,
                   lambda k=k: _equal(lhs_minus(k), minus[k].compose(liou)))
        report.run(f"H1 o Q- = Q- o L ({slot} row, on psi0)", src,
                   lambda k=k: _equal(lhs_minus(k).apply(psi0), minus[k].apply(liou.apply(psi0))))
        report.run(f"L o Q+ = Q+ o H1 ({slot} column, operator)", src,
                   lambda j=k: _equal(liou.compose(plus[j]), rhs_plus(j)))
        report.run(f"L o Q+ = Q+ o H1 ({slot} column, on psi0)", src,
                   lambda j=k: _equal(liou.apply(plus[j].apply(psi0)), rhs_plus(j).apply(psi0)))

    qh = build_charge("QH", h, beta, 1)
    qhb = build_charge("QHbar", h, beta, 1)
    zero_poly = Polynomial.zero(2)

    def down():
        state = FormVector(1, [zero_poly, psi0, psi0.partial(1) + psi0, zero_poly])
        got = qhb.apply(state)
        expected = FormVector(1, [plus[0].apply(state[1]) + plus[1].apply(state[2]), zero_poly, zero_poly, zero_poly])
        return _equal(got, expected)

    def up():
        state = FormVector(1, [psi0, zero_poly, zero_poly, zero_poly])
        expected = FormVector(1, [zero_poly, minus[0].apply(psi0), minus[1].apply(psi0), zero_poly])
        return _equal(qh.apply(state), expected)

    report.run("QHbar maps one-forms to (Q+_k psi_k, 0, 0, 0)", src, down)
    report.run("QH maps (psi0, 0, 0, 0) to (0, Q-_1 psi0, Q-_2 psi0, 0)", src, up)
    return report.sorted()


def suite_names() -> List[str]:
    return list(SUITES)


def run_all(
    ns, h_text: str | None = None, beta=None, seed: int = 0, samples: int = DEFAULT_SAMPLES, max_n: int = DEFAULT_MAX_N
) -> List[VerificationReport]:
    """Every suite for every ``n``, plus the n=1 intertwining, kernel and superalgebra checks."""
    from .evolution import kernel_free_check
    from .sampling import random_polynomial
    from .superalgebra import superalgebra_verify

    reports: List[VerificationReport] = []
    for n in ns:
        _check_n(n, max_n)
        rng = random.Random(f"all:{n}:{seed}")
        h = Polynomial.parse(h_text, 2 * n) if h_text else random_hamiltonian(rng, n)
        for kind in SUITES:
            if kind == "susy":
                for b in ([beta] if beta is not None else [Fraction(1), Fraction(1, 2)]):
                    r = run_suite(kind, n, h, b, seed, samples, max_n)
                    r.suite = f"susy(beta={b})"
                    reports.append(r)
            else:
                reports.append(run_suite(kind, n, h if kind in ("cartan", "geometry") else None, beta, seed, samples, max_n))
    rng = random.Random(f"extras:{seed}")
    h1 = Polynomial.parse(h_text, 2) if h_text and 1 in ns else random_hamiltonian(rng, 1)
    psi0 = random_polynomial(rng, 2)
    reports.append(intertwine_check(h1, psi0, 1, 1 if beta is None else beta))
    psi = random_form(rng, 1)
    for t in (Fraction(1), Fraction(3, 2), Fraction(-2)):
        reports.append(kernel_free_check(psi, t))
    for hval in ("1", "4", "9/4", "7"):
        r = superalgebra_verify(hval)
        r.suite = f"superalgebra(h={hval})"
        reports.append(r.sorted())
    return reports
