"""The free module of logarithmic one-forms and its bracket.

With every divisor generator normalized to a single variable, the module
of logarithmic differentials is free with one basis form per ambient
variable: dx_j/x_j where x_j carries a divisor, dx_l elsewhere.  A
one-form is then just a coefficient vector, and the logarithmic
Hamiltonian map, the bracket on one-forms and the nondegeneracy test all
become exact polynomial computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .poisson import Derivation, LogDivisorSpec, PoissonStructure
from .poly import Poly, Scalar


class DivisionObstruction(ArithmeticError):
    """A required exact division by a divisor variable failed.

    This signals that the principal logarithmic condition does not hold
    (or was not checked) for the structure in use; it is never a
    recoverable state.
    """


@dataclass(frozen=True)
class BasisForm:
    """dx_j/x_j when is_log, else dx_j."""

    index: int
    is_log: bool

    def label(self, names: Sequence[str]) -> str:
        name = names[self.index]
        return f"d{name}/{name}" if self.is_log else f"d{name}"


@dataclass(frozen=True)
class LogBasis:
    """Ordered basis of the logarithmic one-forms, one form per variable."""

    forms: tuple[BasisForm, ...]

    @classmethod
    def from_divisor(cls, nvars: int, divisor: LogDivisorSpec) -> "LogBasis":
        logvars = set(divisor.variables)
        return cls(tuple(BasisForm(j, j in logvars) for j in range(nvars)))

    @classmethod
    def all_exact(cls, nvars: int) -> "LogBasis":
        return cls(tuple(BasisForm(j, False) for j in range(nvars)))

    @property
    def n(self) -> int:
        return len(self.forms)

    def labels(self, names: Sequence[str]) -> list[str]:
        return [f.label(names) for f in self.forms]


@dataclass(frozen=True)
class OneForm:
    """sum_i coeffs[i] * basis form i."""

    coeffs: tuple[Poly, ...]

    @classmethod
    def zero(cls, n: int, nvars: int) -> "OneForm":
        return cls(tuple(Poly.zero(nvars) for _ in range(n)))

    @classmethod
    def basis_element(cls, n: int, nvars: int, i: int) -> "OneForm":
        return cls(tuple(
            Poly.const(nvars, 1) if j == i else Poly.zero(nvars) for j in range(n)
        ))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "OneForm") -> "OneForm":
        return OneForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "OneForm":
        return OneForm(tuple(-a for a in self.coeffs))

    def scale(self, factor: Union[Poly, Scalar]) -> "OneForm":
        return OneForm(tuple(factor * a for a in self.coeffs))


def _divide_by_variable(poly: Poly, var: int, what: str) -> Poly:
    q = poly.exact_div(Poly.variable(poly.nvars, var))
    if q is None:
        raise DivisionObstruction(
            f"{what}: coefficient is not divisible by variable {var};"
            " the structure is not principal logarithmic along the divisor"
        )
    return q


def log_hamiltonian_basis(structure: PoissonStructure, form: BasisForm) -> Derivation:
    """Image of a basis form: the Hamiltonian derivation of x_j, divided
    by x_j for the logarithmic forms."""
    ham = structure.hamiltonian(structure.variable(form.index))
    if not form.is_log:
        return ham
    coeffs = tuple(
        _divide_by_variable(c, form.index, "log Hamiltonian") if c else c
        for c in ham.coeffs
    )
    return Derivation(coeffs)


def log_hamiltonian(structure: PoissonStructure, basis: LogBasis, alpha: OneForm) -> Derivation:
    """A-linear extension of log_hamiltonian_basis to one-forms."""
    n = structure.n
    total = [Poly.zero(n) for _ in range(n)]
    for a, form in zip(alpha.coeffs, basis.forms):
        if a.is_zero():
            continue
        image = log_hamiltonian_basis(structure, form)
        for j in range(n):
            if image.coeffs[j]:
                total[j] = total[j] + a * image.coeffs[j]
    return Derivation(tuple(total))


def express_d(basis: LogBasis, f: Poly) -> OneForm:
    """The differential of f expanded in the basis: the coefficient of
    dx_j/x_j is x_j df/dx_j, the coefficient of dx_l is df/dx_l."""
    coeffs = []
    for form in basis.forms:
        df = f.partial(form.index)
        if form.is_log:
            df = Poly.variable(f.nvars, form.index) * df
        coeffs.append(df)
    return OneForm(tuple(coeffs))


def pair_scalar(structure: PoissonStructure, basis: LogBasis, i: int, j: int) -> Poly:
    """{x_i, x_j} divided by the divisor variables among the two forms.

    This is both the scalar whose differential is the bracket of basis
    forms and the value of the induced two-form on the basis pair.
    """
    value = structure.entry(i, j)
    if value.is_zero():
        return value
    if basis.forms[i].is_log:
        value = _divide_by_variable(value, i, "basis bracket")
    if basis.forms[j].is_log:
        value = _divide_by_variable(value, j, "basis bracket")
    return value


def structure_constants(structure: PoissonStructure, basis: LogBasis, i: int, j: int) -> OneForm:
    """The bracket of basis forms i and j, as a one-form."""
    if i == j:
        return OneForm.zero(basis.n, structure.n)
    return express_d(basis, pair_scalar(structure, basis, i, j))


def form_bracket(structure: PoissonStructure, basis: LogBasis,
                 alpha: OneForm, beta: OneForm) -> OneForm:
    """Lie bracket on logarithmic one-forms.

    Expanded over the basis with the module Leibniz rule:
    [alpha, beta] = sum a_i b_j [e_i, e_j]
                  + sum_j H(alpha)(b_j) e_j - sum_i H(beta)(a_i) e_i
    where H is the logarithmic Hamiltonian map.
    """
    n = structure.n
    total = OneForm.zero(basis.n, n)
    for i, a in enumerate(alpha.coeffs):
        if a.is_zero():
            continue
        for j, b in enumerate(beta.coeffs):
            if b.is_zero() or i == j:
                continue
            total = total + structure_constants(structure, basis, i, j).scale(a * b)
    d_alpha = log_hamiltonian(structure, basis, alpha)
    d_beta = log_hamiltonian(structure, basis, beta)
    coeffs = list(total.coeffs)
    for k in range(basis.n):
        coeffs[k] = coeffs[k] + d_alpha.apply(beta.coeffs[k]) - d_beta.apply(alpha.coeffs[k])
    return OneForm(tuple(coeffs))


def log_hamiltonian_matrix(structure: PoissonStructure, basis: LogBasis) -> list[list[Poly]]:
    """Matrix of the logarithmic Hamiltonian map in the dual basis of
    logarithmic vector fields (x_j d/dx_j on divisor variables, d/dx_l
    elsewhere).  Column j expands the image of basis form j."""
    n = structure.n
    cols = []
    for form in basis.forms:
        image = log_hamiltonian_basis(structure, form)
        col = []
        for i, row_form in enumerate(basis.forms):
            c = image.coeffs[i]
            if row_form.is_log and c:
                c = _divide_by_variable(c, i, "dual basis expansion")
            col.append(c)
        cols.append(col)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def poly_det(matrix: Sequence[Sequence[Poly]], nvars: int) -> Poly:
    """Determinant by cofactor expansion; fine for the small sizes here."""
    size = len(matrix)
    if size == 0:
        return Poly.const(nvars, 1)
    if size == 1:
        return matrix[0][0]
    total = Poly.zero(nvars)
    for col in range(size):
        entry = matrix[0][col]
        if entry.is_zero():
            continue
        minor = [
            [row[c] for c in range(size) if c != col]
            for row in matrix[1:]
        ]
        cof = entry * poly_det(minor, nvars)
        total = total + cof if col % 2 == 0 else total - cof
    return total


@dataclass(frozen=True)
class LogSymplecticReport:
    is_log_symplectic: bool
    determinant: Poly


def log_symplectic_test(structure: PoissonStructure, basis: LogBasis) -> LogSymplecticReport:
    """Nondegeneracy of the logarithmic Hamiltonian map: its matrix must
    have a nonzero constant determinant."""
    det = poly_det(log_hamiltonian_matrix(structure, basis), structure.n)
    ok = det.is_constant() and not det.is_zero()
    return LogSymplecticReport(ok, det)


def two_form_value(structure: PoissonStructure, basis: LogBasis,
                   alpha: OneForm, beta: OneForm) -> Poly:
    """The induced alternating two-form evaluated on a pair of one-forms
    (A-bilinear extension of pair_scalar)."""
    n = structure.n
    total = Poly.zero(n)
    for i, a in enumerate(alpha.coeffs):
        if a.is_zero():
            continue
        for j, b in enumerate(beta.coeffs):
            if b.is_zero() or i == j:
                continue
            total = total + a * b * pair_scalar(structure, basis, i, j)
    return total


def extension_bracket(structure: PoissonStructure, basis: LogBasis,
                      left: tuple[Poly, OneForm],
                      right: tuple[Poly, OneForm]) -> tuple[Poly, OneForm]:
    """Bracket on A + (log one-forms) used for the central extension:

    [(a, alpha), (b, beta)] =
        ({a,b} + pi(alpha,beta) + H(alpha)(b) - H(beta)(a), [alpha, beta])

    with pi the induced two-form and H the logarithmic Hamiltonian map.
    """
    a, alpha = left
    b, beta = right
    scalar = (
        structure.bracket(a, b)
        + two_form_value(structure, basis, alpha, beta)
        + log_hamiltonian(structure, basis, alpha).apply(b)
        - log_hamiltonian(structure, basis, beta).apply(a)
    )
    return scalar, form_bracket(structure, basis, alpha, beta)
