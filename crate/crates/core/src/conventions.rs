//! Calibrated sign and normalization constants.
//!
//! The big bracket is fixed by `{p_i, x^j} = δ_i^j`, `{θ_a, ξ^b} = δ_a^b` and
//! the graded Leibniz rule over the canonical order θ < p < ξ. Everything
//! below is a consequence of that choice, pinned by the calibration checks in
//! [`calibrate`].

use sha2::{Digest, Sha256};

use crate::algebroid::{self, AlgebroidSpec, EndoTensor, Form, MultiVector, Section};
use crate::coeff::{CoeffMatrix, RatFunc};
use crate::superalgebra::{GeneratorSet, SuperElem};

/// Sign of the structure term: `μ = ρ^i_a p_i ξ^a + s·½ c^c_{ab} θ_c ξ^a ξ^b`.
pub const STRUCTURE_SIGN: i64 = -1;
/// A `(1,1)`-tensor `N` embeds as `s·N^a_b θ_a ξ^b`.
pub const ENDO_SIGN: i64 = -1;
/// Exact scalar in `{Id, μ} = λ μ`.
pub const IDENTITY_DEFORMATION_SCALAR: i64 = 1;
/// Exact scalar in `μ_{Id,Id} = λ μ`.
pub const DOUBLE_IDENTITY_DEFORMATION_SCALAR: i64 = 1;
/// Exact scalar in `{ω, π} = λ·(π♯∘ω♭)` for a 2-form and bivector.
pub const FORM_BIVECTOR_SCALAR: i64 = 1;
/// Graded symmetry `{a, b} = s·(−1)^{|a||b|} {b, a}`.
pub const SYMMETRY_SIGN: i64 = -1;
/// `[N, N]_FN = λ·TN`.
pub const FN_TORSION_SCALAR: i64 = -2;
/// `{π,{π,μ}} = s·{{π,μ},π}`; the form of `[π,π]` under which the
/// bivector/2-form/torsion identity of [`crate::algebroid::ksr_sides`] holds.
pub const KSR_SELF_BRACKET_SIGN: i64 = -1;
/// The concomitant element induces `([α,β]_N)_π + s·([α,β]_π)_{N*}` on 1-forms.
pub const CONCOMITANT_DUAL_SIGN: i64 = -1;

/// Textual summary of every constant, in a fixed order.
pub fn description() -> String {
    format!(
        "bracket: {{p_i,x^j}}=delta, {{th_a,xi^b}}=delta, order th<p<xi\n\
         structure_sign={STRUCTURE_SIGN}\n\
         endo_sign={ENDO_SIGN}\n\
         form_embedding=(1/l!) s_a.. xi^a..\n\
         multivector_embedding=(1/k!) P^a.. th_a..\n\
         valued_form_embedding=-(1/k!) K^c_a.. th_c xi^a..\n\
         identity_deformation={IDENTITY_DEFORMATION_SCALAR}\n\
         double_identity_deformation={DOUBLE_IDENTITY_DEFORMATION_SCALAR}\n\
         form_bivector={FORM_BIVECTOR_SCALAR}\n\
         symmetry_sign={SYMMETRY_SIGN}\n\
         fn_torsion={FN_TORSION_SCALAR}\n\
         ksr_self_bracket={KSR_SELF_BRACKET_SIGN}\n\
         concomitant_dual={CONCOMITANT_DUAL_SIGN}\n\
         matrices: column vectors, flat=W^T, sharp=Pi^T, Pi=W^-1\n"
    )
}

/// Hex SHA-256 of [`description`].
pub fn fingerprint() -> String {
    Sha256::digest(description().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs the calibration identities on small fixtures and reports each one.
pub fn calibrate() -> Vec<(&'static str, bool)> {
    let mut out = Vec::new();
    let g = GeneratorSet::new(vec!["x".into(), "y".into()], 2).expect("generators");
    let one = RatFunc::one();
    out.push(("{p1,x1}=1", SuperElem::p(&g, 1).bracket(&SuperElem::x(&g, 1)) == SuperElem::scalar(&g, one.clone())));
    out.push(("{th1,xi1}=1", SuperElem::theta(&g, 1).bracket(&SuperElem::xi(&g, 1)) == SuperElem::scalar(&g, one.clone())));
    let (a, b) = (SuperElem::theta(&g, 1), SuperElem::xi(&g, 1));
    out.push(("graded symmetry", a.bracket(&b) == b.bracket(&a).scale_int(SYMMETRY_SIGN * -1)));

    let so3 = algebroid::build_mu(&AlgebroidSpec::so3());
    let s3 = so3.gens().clone();
    let e = |i| Section::basis(&s3, i);
    out.push(("so(3): [e1,e2]=e3", algebroid::lie_bracket(&so3, &e(0), &e(1)) == e(2)));
    let id3 = EndoTensor::identity(&s3);
    out.push((
        "{Id,mu}",
        algebroid::deform_by_endo(&so3, &id3).elem() == &so3.elem().scale_int(IDENTITY_DEFORMATION_SCALAR),
    ));
    out.push((
        "{Id,{Id,mu}}",
        algebroid::deform_twice(&so3, &id3, &id3).elem() == &so3.elem().scale_int(DOUBLE_IDENTITY_DEFORMATION_SCALAR),
    ));

    let tangent = algebroid::build_mu(&AlgebroidSpec::tangent(vec!["x".into(), "y".into()]).expect("tangent"));
    let x = Section::basis(tangent.gens(), 0);
    let f = RatFunc::var(0).pow(2);
    out.push(("anchor: dx(x^2)=2x", algebroid::anchor_apply(&tangent, &x, &f) == &RatFunc::var(0) * &RatFunc::from_int(2)));

    let w = CoeffMatrix::from_integers(&[&[0, 1], &[-1, 0]]);
    let omega = Form::two_form(tangent.gens(), &w).expect("2-form");
    let pi = MultiVector::bivector(tangent.gens(), &w.inverse().expect("invertible")).expect("bivector");
    let id2 = EndoTensor::identity(tangent.gens());
    out.push(("{omega,pi}=Id", omega.elem().bracket(pi.elem()) == id2.elem().scale_int(FORM_BIVECTOR_SCALAR)));

    let n = EndoTensor::new(&s3, CoeffMatrix::from_integers(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]])).expect("endo");
    let nn = algebroid::frolicher_nijenhuis(&so3, &n.to_valued_form(), &n.to_valued_form()).expect("FN");
    out.push(("[N,N]_FN = -2 TN", nn.elem() == &algebroid::torsion(&so3, &n).elem().scale_int(FN_TORSION_SCALAR)));
    out
}
