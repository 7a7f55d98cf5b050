//! Property-based invariants for the order structure and scalarization.

mod common;

use conekit::{Cone, ConeKind, Scalarizer, Vector};
use proptest::prelude::*;

fn coords(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0f64..100.0, dim)
}

fn nonneg(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..100.0, dim)
}

proptest! {
    #[test]
    fn leq_is_reflexive(raw in coords(5)) {
        for (_, cone) in common::standard_cones() {
            let x = Vector::new(raw[..cone.dim()].to_vec()).unwrap();
            prop_assert!(cone.leq(&x, &x).unwrap());
        }
    }

    #[test]
    fn adding_a_member_moves_up_in_the_order(raw in coords(4), gap in nonneg(4)) {
        // Orthant members are exactly the componentwise-nonnegative
        // vectors, so x <= x + gap holds with slack >= 0.
        let cone = Cone::orthant(4).unwrap();
        let x = Vector::new(raw).unwrap();
        let k = Vector::new(gap).unwrap();
        let y = &x + &k;
        prop_assert!(cone.leq(&x, &y).unwrap());
        // Transitivity along a second member step.
        let z = &y + &k;
        prop_assert!(cone.leq(&y, &z).unwrap());
        prop_assert!(cone.leq(&x, &z).unwrap());
    }

    #[test]
    fn interior_shift_gives_strict_order(raw in coords(3), gap in nonneg(3)) {
        let cone = Cone::orthant(3).unwrap();
        let x = Vector::new(raw).unwrap();
        let k = Vector::new(gap).unwrap();
        let y = &(&x + &k) + cone.e();
        prop_assert!(cone.ll(&x, &y).unwrap());
        prop_assert!(cone.leq(&x, &y).unwrap());
        prop_assert!(cone.lt(&x, &y).unwrap());
    }

    #[test]
    fn xi_is_homogeneous_and_subadditive(a in coords(5), b in coords(5), lambda in 0.01f64..10.0) {
        for (name, cone) in common::standard_cones() {
            let dim = cone.dim();
            let s = Scalarizer::new(cone);
            let x = Vector::new(a[..dim].to_vec()).unwrap();
            let y = Vector::new(b[..dim].to_vec()).unwrap();
            let xi_x = s.xi(&x).unwrap();
            let xi_y = s.xi(&y).unwrap();

            let scaled = s.xi(&x.scale(lambda)).unwrap();
            prop_assert!(
                (scaled - lambda * xi_x).abs() <= 1e-9 * (1.0 + (lambda * xi_x).abs()),
                "{name}: homogeneity {scaled} vs {}", lambda * xi_x
            );

            let sum = s.xi(&(&x + &y)).unwrap();
            prop_assert!(
                sum <= xi_x + xi_y + 1e-9 * (1.0 + xi_x.abs() + xi_y.abs()),
                "{name}: subadditivity {sum} > {xi_x} + {xi_y}"
            );
        }
    }

    #[test]
    fn orthant_is_the_identity_halfspace(raw in coords(3), probe in coords(3)) {
        let orthant = Cone::orthant(3).unwrap();
        let rows = (0..3).map(|i| Vector::basis(3, i)).collect();
        let halfspace = Cone::new(ConeKind::Halfspace { rows }, None).unwrap();
        let x = Vector::new(raw).unwrap();
        let p = Vector::new(probe).unwrap();
        prop_assert_eq!(orthant.contains(&x).unwrap(), halfspace.contains(&x).unwrap());
        prop_assert_eq!(orthant.in_interior(&x).unwrap(), halfspace.in_interior(&x).unwrap());
        prop_assert_eq!(orthant.leq(&x, &p).unwrap(), halfspace.leq(&x, &p).unwrap());
        let xo = Scalarizer::new(orthant).xi(&x).unwrap();
        let xh = Scalarizer::new(halfspace).xi(&x).unwrap();
        prop_assert_eq!(xo, xh);
    }

    #[test]
    fn embed_inverts_xi_on_the_ray(r in -50.0f64..50.0) {
        for (name, cone) in common::standard_cones() {
            let s = Scalarizer::new(cone);
            let back = s.xi(&s.embed(r).unwrap()).unwrap();
            prop_assert!(
                (back - r).abs() <= 1e-9 * (1.0 + r.abs()),
                "{name}: xi(embed({r})) = {back}"
            );
        }
    }
}
