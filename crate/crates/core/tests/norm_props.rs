mod common;

use common::{config, polygonal_poly};
use proptest::prelude::*;
use slopesmith::laurent::rational::{int, rat};
use slopesmith::newton::{boundary_slopes, compute_polygon, EdgeSlope};
use slopesmith::norm::{ball_polygon, cs_bound, eval_norm, ideal_point_slope, seminorm_from_polygon, PeripheralClass};

fn class() -> impl Strategy<Value = PeripheralClass> {
    (-30i64..=30, -30i64..=30).prop_map(|(a, b)| PeripheralClass::new(a, b))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn norm_axioms(p in polygonal_poly(), g in class(), d in class(), k in -7i64..=7) {
        let s = seminorm_from_polygon(&compute_polygon(&p).unwrap()).unwrap();
        let ng = eval_norm(&s, g);
        prop_assert_eq!(eval_norm(&s, PeripheralClass::new(k * g.a, k * g.b)), &ng * int(k.abs()));
        prop_assert!(eval_norm(&s, PeripheralClass::new(g.a + d.a, g.b + d.b)) <= &ng + eval_norm(&s, d));
        prop_assert_eq!(eval_norm(&s, PeripheralClass::new(-g.a, -g.b)), ng.clone());
        prop_assert!(ng >= int(0));
    }

    #[test]
    fn ball_vertices_lie_on_slope_rays(p in polygonal_poly()) {
        let n = compute_polygon(&p).unwrap();
        let slopes = boundary_slopes(&n).unwrap();
        let s = seminorm_from_polygon(&n).unwrap();
        // Parallel slopes give a seminorm only; nothing to check then.
        if let Ok(ball) = ball_polygon(&s) {
            for (x, y) in &ball.vertices {
                let slope = if *y == int(0) { EdgeSlope::INFINITY } else { EdgeSlope::from_rational(&(x / y)) };
                prop_assert!(slopes.contains(&slope), "vertex ({}, {}) not on a slope ray", x, y);
                prop_assert_eq!(slopesmith::norm::norm_at(&s, x, y), ball.radius.clone());
            }
        }
    }

    #[test]
    fn ideal_point_slope_is_scale_invariant(x in 0u64..50, y in 1u64..50, k in 1u64..20) {
        prop_assert_eq!(ideal_point_slope(x * k, y * k).unwrap(), ideal_point_slope(x, y).unwrap());
    }

    #[test]
    fn cs_bound_at_least_two(n in 1i64..500, d in 2i64..500) {
        prop_assume!(n < d);
        let t = rat(n, d);
        let b = cs_bound(&t).unwrap();
        prop_assert!(b >= int(2));
        prop_assert_eq!(b == int(2), t == rat(1, 2));
    }
}
