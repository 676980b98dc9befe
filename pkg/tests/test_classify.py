"""Classification pipeline: block detection, model extraction, canonical form."""

from fractions import Fraction

import pytest

import reinhardt_lab as rl


def spec_of(text, n, blocks=None, name=""):
    b = rl.BlockStructure([[i - 1 for i in g] for g in blocks]) if blocks else None
    return rl.DomainSpec(n=n, Q=rl.parse_polynomial(text, num_vars=n), blocks=b, name=name)


class TestBlockDetection:
    def test_equal_partial_classes(self, two_block):
        detected = rl.detect_block_structure(spec_of("u1 + u2 + u3^2 + 2*u3*u4 + u4^2", 4))
        assert detected.to_one_based() == [[1, 2], [3, 4]]

    def test_singletons_when_nothing_merges(self, nonconvex):
        detected = rl.detect_block_structure(nonconvex)
        assert detected.to_one_based() == [[1], [2], [3]]

    def test_declared_blocks_round_trip(self, two_block):
        # grouped polynomial must expand back exactly
        grouped = rl.block_moduli_polynomial(two_block.Q, two_block.effective_blocks())
        assert grouped.num_vars == 2

    def test_invalid_declared_blocks_raise(self):
        spec = spec_of("u1 + 2*u2", 2)
        with pytest.raises(rl.DomainError):
            rl.block_moduli_polynomial(spec.Q, rl.BlockStructure([[0, 1]]))


class TestClassify:
    def test_model_fixture_exact(self, nonconvex):
        v = rl.classify(nonconvex)
        assert v.kind == "model"
        m = v.model
        assert m.exponents == (2, 2)
        assert m.pure_coefficients == (Fraction(1), Fraction(1))
        assert m.cross_terms == (((1, 1), Fraction(-1)),)
        assert m.first_block_scale == Fraction(1)

    def test_ball_detected(self, ball3):
        v = rl.classify(ball3)
        assert v.kind == "ball"

    def test_two_block_model(self, two_block):
        v = rl.classify(two_block)
        assert v.kind == "model"
        assert v.model.exponents == (2,)
        # cross term 2 u3 u4 lives inside the second block's grouped variable
        assert v.model.cross_terms == ()

    def test_origin_outside_raises(self):
        spec = spec_of("u1^2 - 4*u1 + 4", 1)
        with pytest.raises(rl.DomainError):
            rl.classify(spec)

    def test_unknown_when_boundedness_unresolved(self):
        v = rl.classify(spec_of("u1^2 - 4*u1 + 4*u2", 2))
        assert v.kind == "unknown"
        assert "boundedness" in v.reason

    def test_unbounded_witness_raises(self):
        with pytest.raises(rl.DomainError):
            rl.classify(spec_of("u1 - u2", 2))

    def test_two_pure_powers_not_model(self):
        v = rl.classify(spec_of("u1 + u2^2 + u2^3", 2), assume_bounded=True)
        assert v.kind == "not_model"
        assert "two pure powers" in v.reason

    def test_no_linear_block_not_model(self):
        v = rl.classify(spec_of("u1^2 + u2^2", 2), assume_bounded=True)
        assert v.kind == "not_model"

    def test_weight_violation_not_model(self):
        # cross term u1 u2 has weight 1/2 + 1/2 = 1 against m = (2, 2):
        # tweak to u1 u2^3 -> 1/2 + 3/2 = 2, never admissible
        v = rl.classify(spec_of("u3 + u1^2 + u2^2 + u1*u2^3", 3), assume_bounded=True)
        assert v.kind == "not_model"

    def test_constant_shift_renormalized(self):
        # {1/2 + 1/2 Q < 1} equals {Q < 1}; classification must agree
        base = spec_of("u1 + u2^2 + u3^2 - u2*u3", 3)
        shifted = spec_of("1/2 + 1/2*u1 + 1/2*u2^2 + 1/2*u3^2 - 1/2*u2*u3", 3)
        a = rl.classify(base)
        b = rl.classify(shifted)
        assert a.kind == b.kind == "model"
        assert b.constant_shift == Fraction(1, 2)
        assert rl.canonical_form(base).fingerprint() == rl.canonical_form(shifted).fingerprint()

    def test_compactness_consequence_needs_clean_regularity(self, nonconvex):
        spec = spec_of("u1 + u2^2 + u2^3", 2)
        plain = rl.classify(spec, assume_bounded=True)
        assert "compact" not in plain.reason
        reg = rl.boundary_regularity_sample(spec, samples=200, seed=0)
        with_reg = rl.classify(spec, assume_bounded=True, regularity=reg)
        assert "compact" in with_reg.reason


class TestSliceForm:
    def test_slices_match_model(self, nonconvex):
        v = rl.classify(nonconvex)
        for j in range(1, len(v.model.exponents) + 1):
            assert rl.verify_slice_form(nonconvex, v.model, j)

    def test_slice_rejects_wrong_model(self, nonconvex):
        v = rl.classify(nonconvex)
        wrong = rl.ModelForm(
            blocks=v.model.blocks,
            exponents=(2, 3),
            pure_coefficients=(Fraction(1), Fraction(1)),
            cross_terms=(),
            first_block_scale=Fraction(1),
        )
        assert not rl.verify_slice_form(nonconvex, wrong, 2)


class TestCanonicalForm:
    def test_identity_on_fixture(self, nonconvex):
        can = rl.canonical_form(nonconvex)
        assert can.kind == "model"
        assert can.block_sizes == (1, 1, 1)
        assert can.exponents == (2, 2)
        assert [str(c) for _, c in can.cross_terms] == ["-1"]
        assert can.witness_permutation == (0, 1, 2)
        assert can.spec is not None
        assert can.spec.Q == nonconvex.Q

    def test_invariant_under_dilation_and_permutation(self, nonconvex):
        # v1 = 4 u2, v2 = 3 u1, v3 = u3 applied to the fixture
        twisted = spec_of("4*u2 + 9*u1^2 + u3^2 - 3*u1*u3", 3)
        can = rl.canonical_form(nonconvex)
        tw = rl.canonical_form(twisted)
        assert tw.fingerprint() == can.fingerprint()
        assert tw.witness_permutation == (1, 0, 2)
        assert [str(s) for s in tw.witness_scalars] == ["1/3", "1/4", "1"]

    def test_witness_transports_exactly(self, nonconvex):
        twisted = spec_of("4*u2 + 9*u1^2 + u3^2 - 3*u1*u3", 3)
        tw = rl.canonical_form(twisted)
        assert tw.witness_map is not None
        assert twisted.Q.substitute(tw.witness_map) == tw.spec.Q

    def test_idempotent(self, nonconvex):
        can = rl.canonical_form(nonconvex)
        again = rl.canonical_form(can.spec)
        assert again.fingerprint() == can.fingerprint()
        assert again.witness_permutation == (0, 1, 2)
        assert all(str(s) == "1" for s in again.witness_scalars)

    def test_irrational_scaling_stays_symbolic(self):
        spec = spec_of("u1 + u2^2 + 2*u3^4 + u2*u3^2", 3)
        can = rl.canonical_form(spec)
        assert can.kind == "model"
        (exps, coeff), = can.cross_terms
        assert exps == (1, 2)
        assert str(coeff) == "(1/2)^(1/2)"
        assert can.spec is None  # not representable with rational coefficients

    def test_ball_canonical(self, ball3):
        can = rl.canonical_form(ball3)
        assert can.kind == "ball"
        assert can.block_sizes == (3,)

    def test_block_order_sorted_by_size_then_exponent(self):
        # two singleton blocks with exponents 3 and 2 must come out as (2, 3)
        spec = spec_of("u1 + u2^3 + u3^2", 3)
        can = rl.canonical_form(spec)
        assert can.exponents == (2, 3)
