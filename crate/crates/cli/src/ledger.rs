/// Every check name a report may carry, with the statement it verifies.
pub const THEOREM_LEDGER: &[(&str, &str)] = &[
    ("gauss_closed_matches_bruteforce", "the three-case closed formula for G(u, v) equals the direct sum"),
    ("center_order_predicted", "zeta_{2p}^{-12-p(p+1)} has order p for odd prime powers p >= 5, 2 at p = 2, 2^{s+1} at p = 12*2^s and 3^s at p = 12*3^s"),
    ("is_symplectic", "M^T J M = J over Z/nZ"),
    ("in_theta_group", "the diagonals of A^T C and B^T D are even"),
    ("order_matches_formula", "the enumerated group order equals |Sp(2g, Z/nZ)|"),
    ("mu_is_minus_one", "the genus-2 chain relation lifts with defect -1 at even level"),
    ("mu_matches_gauss_closed_form", "mu = k^{-2} (G(1, 2k)/2)^4"),
    ("braid_lifts_normalized", "the normalized twist lifts satisfy the braid and commutation relations exactly"),
    ("s2_trace_formula", "tr S^2 is 2^g for even k and 1 for odd k"),
    ("eta_in_r8", "the projective cocycle takes values in the 8th roots of unity"),
    ("multiplier_formulas_agree", "the genus-1 case formulas agree with the Gauss-sum multiplier"),
    ("coinvariant_dim_expected", "coinvariants of the exterior square are Z/2 at p = 2 and vanish at odd p; degree 1 coinvariants vanish"),
    ("n11n22_class_nonzero", "n11 ^ n22 is nonzero in the F_2 coinvariants"),
    ("invariant_forms_match_claim", "conjugation-invariant bilinear forms on M_n(F_p) have dimension 2, alternating ones dimension 1 if p = 2 and 0 otherwise"),
    ("decomposition_certificate", "the decomposition basis carries the form to its orthogonal normal form"),
    ("split_iff_class_zero", "a form is split exactly when its Witt class vanishes"),
    ("class_additive", "the Witt class is additive under orthogonal sum"),
    ("v_class_antisymmetric", "[L; q0, q1] = -[L; q1, q0]"),
    ("gauss_sweep", "closed formula equals brute force for all 0 <= u < v <= 100"),
    ("center_order_families", "center orders on the detecting levels"),
    ("chain_defect_even_levels", "mu = -1 exactly for k = 2, 4, 6, 8, and equals k^{-2} (G(1, 2k)/2)^4"),
    ("braid_lifts_levels", "normalized braid lifts hold for k = 2, 4, 6"),
    ("cocycle_eighth_roots", "eta^8 = 1 on 50 seeded random word triples at (g, k) = (2, 2) and (2, 4)"),
    ("s2_trace_sweep", "tr S^2 formula for g <= 4, 2 <= k <= 9"),
    ("humphries_group_orders", "Humphries transvections generate groups of order 6, 24, 720 for (g, n) = (1, 2), (1, 3), (2, 2)"),
    ("coinvariant_dims", "coinvariant dimensions (4,2,2) = 1, (4,3,2) = 0, (4,5,2) = 0, (4,2,1) = 0, (3,2,2) = (5,2,2) = 1"),
    ("n11n22_detected", "n11 ^ n22 is nonzero in the F_2 coinvariants for g = 3, 4, 5"),
    ("invariant_form_dims", "(2, 0) for (n, p) = (2,3), (3,3), (2,5) and (2, 1) for (2,2), (3,2), (4,2)"),
    ("witt_order_eight", "<-1> has order 8 in W(Z/4)"),
    ("omega_nonsplit_2omega_split", "omega is not split and omega + omega is split"),
    ("omega_discriminant", "the discriminant of omega is -1"),
    ("rank4_isometry", "4<-1> is isometric to -omega + <1> + <-1> in the basis e1+e2, e1+e3, e1-e2-e3, e4"),
];

pub fn describe(name: &str) -> Option<&'static str> {
    THEOREM_LEDGER.iter().find(|(n, _)| *n == name).map(|(_, d)| *d)
}
