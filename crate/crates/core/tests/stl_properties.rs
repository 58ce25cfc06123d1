mod common;

use common::{close, random_case, satisfied, Oracle};
use csi::stl::{parse, relative_robustness_signal, robustness_signal, Formula};
use proptest::prelude::*;

fn values(signal: Vec<csi::stl::ExtReal>) -> Vec<f64> {
    signal.into_iter().map(|v| v.value()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_naive_recursion(seed in any::<u64>()) {
        let (phi, w) = random_case(seed);
        let engine = values(robustness_signal(&phi, &w).unwrap());
        let oracle = Oracle::standard(&w).signal(&phi);
        for (t, (a, b)) in engine.iter().zip(&oracle).enumerate() {
            prop_assert!(close(*a, *b, 1e-9), "t={t} engine {a} oracle {b} for {phi}");
        }
    }

    #[test]
    fn relative_matches_naive_recursion(seed in any::<u64>(), split in 0u8..27) {
        let (phi, w) = random_case(seed);
        let names: Vec<&str> = w.var_names().iter().map(String::as_str).collect();
        let (mut x, mut y) = (Vec::new(), Vec::new());
        let mut code = split;
        for name in &names {
            match code % 3 {
                0 => x.push(*name),
                1 => y.push(*name),
                _ => {}
            }
            code /= 3;
        }
        let engine = values(relative_robustness_signal(&phi, &w, &x, &y).unwrap());
        let oracle = Oracle::relative(&w, &x, &y).signal(&phi);
        for (a, b) in engine.iter().zip(&oracle) {
            prop_assert!(close(*a, *b, 1e-9), "engine {a} oracle {b} for {phi} x={x:?} y={y:?}");
        }
    }

    #[test]
    fn negation_duality(seed in any::<u64>()) {
        let (phi, w) = random_case(seed);
        let pos = robustness_signal(&phi, &w).unwrap();
        let neg = robustness_signal(&Formula::not(phi), &w).unwrap();
        for (p, n) in pos.iter().zip(&neg) {
            prop_assert_eq!(p.value(), -n.value());
        }
    }

    #[test]
    fn full_scope_recovers_standard(seed in any::<u64>()) {
        let (phi, w) = random_case(seed);
        let names: Vec<&str> = w.var_names().iter().map(String::as_str).collect();
        let empty: [&str; 0] = [];
        let relative = relative_robustness_signal(&phi, &w, &names, &empty).unwrap();
        prop_assert_eq!(relative, robustness_signal(&phi, &w).unwrap());
    }

    #[test]
    fn sign_is_sound(seed in any::<u64>()) {
        let (phi, w) = random_case(seed);
        let rho = robustness_signal(&phi, &w).unwrap();
        let sat = satisfied(&phi, &w);
        for (t, (r, s)) in rho.iter().zip(&sat).enumerate() {
            if r.value() > 0.0 {
                prop_assert!(*s, "t={t} rho {r} but violated: {phi}");
            }
            if r.value() < 0.0 {
                prop_assert!(!*s, "t={t} rho {r} but satisfied: {phi}");
            }
        }
    }

    #[test]
    fn desugaring_preserves_robustness(seed in any::<u64>()) {
        let (phi, w) = random_case(seed);
        prop_assert_eq!(
            robustness_signal(&phi.desugar(), &w).unwrap(),
            robustness_signal(&phi, &w).unwrap()
        );
    }

    #[test]
    fn print_parse_fixpoint(seed in any::<u64>()) {
        let (phi, _) = random_case(seed);
        let printed = phi.to_string();
        let reparsed = parse(&printed).unwrap();
        prop_assert_eq!(reparsed.to_string(), printed);
    }
}
