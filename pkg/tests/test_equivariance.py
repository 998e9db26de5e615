"""Derivations, exponentials, recognition, lifting and conjugation."""

import pytest
from hypothesis import given, settings

from conftest import R0, a_elements, base_elements, make_r0, ring, x, y, z
from danielewski.equivariance import (
    Derivation,
    Endomorphism,
    canonical_E,
    conjugate_derivation,
    exp_derivation,
    exp_tE,
    is_locally_nilpotent,
    lift_base_automorphism,
    ongelijk_ideal_check,
    recognize_multiple_of_E,
    recognize_R_automorphism,
)
from danielewski.errors import (
    BaseNotFixedError,
    InconsistencyError,
    MissingInverseError,
    NotAnAutomorphismError,
    RelationNotPreservedError,
    UncertifiedNilpotencyError,
)
from danielewski.poly import ParamField

MN = [(1, 1), (1, 2), (2, 1), (2, 2)]
RINGS = {(m, n): ring(x**m, y**n) for m, n in MN + [(2, 3)]}
A = RINGS[(2, 3)]
E = canonical_E(A)


def identity(B):
    return Endomorphism(B, B, {"U": B.u, "V": B.v}, {"U": B.u, "V": B.v})


class TestCanonicalE:
    @pytest.mark.parametrize("mn", MN)
    def test_values(self, mn):
        B = RINGS[mn]
        D = canonical_E(B)
        assert D(B.u) == B(y ** mn[1])
        assert D(B.gen("x")).is_zero()
        assert D(B.u * B.v) == 2 * B(y ** mn[1]) * B.v + 1

    def test_apply(self):
        assert E(A.v) == A(x**2)
        assert E(A.one).is_zero()
        assert E(A.u**2) == 2 * A(y**3) * A.u

    @given(a_elements(A), a_elements(A))
    def test_leibniz(self, a, b):
        assert E(a * b) == E(a) * b + a * E(b)

    def test_bad_derivation_rejected(self):
        with pytest.raises(RelationNotPreservedError):
            Derivation(A, A(x**2), A(y**3))


class TestNilpotency:
    def test_indices(self):
        idx = is_locally_nilpotent(E)
        assert idx[A.u] == 2 and idx[A.v] == 2 and idx[A.gen("x")] == 1

    def test_zero_derivation(self):
        D = Derivation(A, A.zero, A.zero)
        assert set(is_locally_nilpotent(D).values()) == {1}

    def test_budget_exhausted(self):
        assert is_locally_nilpotent(E.scale(A.u), max_iter=12) is None

    def test_exp_requires_certificate(self):
        with pytest.raises(UncertifiedNilpotencyError):
            exp_derivation(E, None)


class TestExponential:
    def test_zero_is_identity(self):
        D = E.scale(0)
        assert exp_derivation(D, is_locally_nilpotent(D)).is_identity()

    def test_shape(self):
        t = A(z)
        phi = exp_derivation(E.scale(t), is_locally_nilpotent(E.scale(t)))
        assert phi.images["U"] == A.u + t * A(y**3)
        assert phi.images["V"] == A.v + t * A(x**2)
        assert phi.images == exp_tE(A, z).images

    def test_inverse(self):
        phi = exp_tE(A, x + z)
        assert phi.compose(exp_tE(A, -(x + z))).is_identity()

    @given(base_elements(), base_elements())
    def test_group_law(self, t1, t2):
        lhs = exp_tE(A, t1).compose(exp_tE(A, t2))
        assert lhs.images == exp_tE(A, t1 + t2).images

    @settings(max_examples=30)
    @given(base_elements())
    def test_recognition_roundtrip(self, t):
        D = E.scale(A(t))
        phi = exp_derivation(D, is_locally_nilpotent(D))
        assert recognize_R_automorphism(phi) == t
        assert recognize_multiple_of_E(D) == t


class TestRecognition:
    def test_multiple_of_E(self):
        B = RINGS[(1, 2)]
        assert recognize_multiple_of_E(canonical_E(B)) == R0.one
        D = Derivation(B, B(y**2 * z), B(x * z))
        assert recognize_multiple_of_E(D) == z

    def test_swapped_images(self):
        # not a derivation of A, so it is built unchecked
        B = RINGS[(1, 2)]
        D = Derivation(B, B(x), B(y**2), check=False)
        assert recognize_multiple_of_E(D) is None

    def test_base_not_killed(self):
        D = Derivation(A, A.zero, A.zero, {"X": A.one}, check=False)
        with pytest.raises(BaseNotFixedError):
            recognize_multiple_of_E(D)

    def test_identity(self):
        assert recognize_R_automorphism(identity(A)).is_zero()

    def test_explicit(self):
        phi = Endomorphism(A, A, {"U": A.u + A(y**3 * z), "V": A.v + A(x**2 * z)})
        assert recognize_R_automorphism(phi) == z

    def test_relation_not_preserved(self):
        with pytest.raises(RelationNotPreservedError):
            Endomorphism(A, A, {"U": A.u + A(y**3), "V": A.v})

    def test_moves_base(self):
        phi = Endomorphism(A, A, {"U": A.u, "V": A.v, "Z": A(-z)}, check=False)
        with pytest.raises(BaseNotFixedError):
            recognize_R_automorphism(phi)

    def test_forged_inverse_is_inconsistent(self):
        # a base-fixing map with a (forged) inverse that is not exp(tE)
        phi = Endomorphism(A, A, {"U": 2 * A.u, "V": A.v}, {"U": A.u / 2, "V": A.v},
                           check=False)
        with pytest.raises(InconsistencyError):
            recognize_R_automorphism(phi)
        assert recognize_R_automorphism(
            Endomorphism(A, A, {"U": 2 * A.u, "V": A.v}, check=False)) is None

    def test_declared_inverse_is_checked(self):
        with pytest.raises(NotAnAutomorphismError):
            Endomorphism(A, A, {"U": A.u + A(y**3), "V": A.v + A(x**2)},
                         {"U": A.u, "V": A.v})


class TestLifting:
    def setup_method(self):
        self.F = ParamField(("t",))
        self.t = self.F.param("t")
        self.Rt = make_r0(self.F)
        self.xt, self.yt, self.zt = self.Rt.gens_elements()
        t = self.t
        self.diag = {"X": self.xt * t**21, "Y": self.yt * t**14, "Z": self.zt * t**6}

    def test_identity_lift(self):
        phi = lift_base_automorphism({}, A)
        assert phi.is_identity()

    @pytest.mark.parametrize("m, n", MN)
    def test_diagonal_lift(self, m, n):
        B = ring(self.xt**m, self.yt**n, self.Rt)
        phi = lift_base_automorphism(self.diag, B)
        assert phi.images["U"] == B.u * self.t ** (-21 * m)
        assert phi.images["V"] == B.v * self.t ** (-14 * n)

    def test_no_scalar_multiple(self):
        B = ring(self.xt * (self.xt - 1), self.yt, self.Rt)
        assert lift_base_automorphism(self.diag, B) is None

    def test_not_an_automorphism(self):
        with pytest.raises(NotAnAutomorphismError):
            lift_base_automorphism({"X": 2 * x}, A)

    @pytest.mark.parametrize("m, n", MN)
    def test_conjugation_by_lift(self, m, n):
        B = ring(self.xt**m, self.yt**n, self.Rt)
        phi = lift_base_automorphism(self.diag, B)
        C = conjugate_derivation(phi, canonical_E(B))
        lam = self.t ** (-21 * m - 14 * n)
        assert C == canonical_E(B).scale(B.one * lam)
        assert recognize_multiple_of_E(C) == self.Rt(lam)


class TestConjugation:
    def test_exp_commutes(self):
        assert conjugate_derivation(exp_tE(A, y + z), E) == E

    def test_zero(self):
        D = Derivation(A, A.zero, A.zero)
        assert conjugate_derivation(exp_tE(A, z), D).is_zero()

    def test_missing_inverse(self):
        phi = Endomorphism(A, A, {"U": A.u, "V": A.v})
        with pytest.raises(MissingInverseError):
            conjugate_derivation(phi, E)


class TestOngelijk:
    def test_identity(self):
        assert ongelijk_ideal_check(R0, {}, (x, y), (x, y))
        assert not ongelijk_ideal_check(R0, {}, (x**2, y), (x, y))

    def test_family(self):
        F = ParamField(("t",))
        t = F.param("t")
        Rt = make_r0(F)
        xt, yt, zt = Rt.gens_elements()
        diag = {"X": xt * t**21, "Y": yt * t**14, "Z": zt * t**6}
        assert not ongelijk_ideal_check(Rt, diag, (xt * (xt - 1), yt), (xt**2 * (xt - 1), yt))
        for value in (1, 2, 3, -1):
            d = {"X": x * value**21, "Y": y * value**14, "Z": z * value**6}
            assert not ongelijk_ideal_check(R0, d, (x * (x - 1), y), (x**2 * (x - 1), y))
