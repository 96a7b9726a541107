mod common;

use common::props;

#[test]
fn associativity_spot_checks() {
    props::associativity(200).unwrap();
}

#[test]
fn coproduct_coassociativity() {
    props::coassociativity(40).unwrap();
}

#[test]
fn star_product_basis_law() {
    props::star_law(300).unwrap();
}

#[test]
fn expand_y_is_symmetric() {
    props::expand_y_invariance(300).unwrap();
}

#[test]
fn rank_base_change_matches_minors() {
    props::base_change_rank(300).unwrap();
}
