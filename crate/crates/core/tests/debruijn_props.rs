use gelfond_core::debruijn::{build_graph_from_values, code_to_orbit, cycle_to_code};
use gelfond_core::maxplus::mcm1;
use gelfond_core::BinaryWord;
use proptest::prelude::*;

proptest! {
    #[test]
    fn orbit_is_closed_under_doubling(bits in 1u64..1 << 12, len in 1u32..=12) {
        let code = BinaryWord::new(bits & ((1 << len) - 1), len).unwrap();
        let orbit = code_to_orbit(code).unwrap();
        for p in &orbit {
            prop_assert!(orbit.contains(&p.double()));
        }
        prop_assert!(orbit.len() as u32 <= len);
        prop_assert_eq!(len % orbit.len() as u32, 0);
    }

    #[test]
    fn complement_mirrors_orbit(bits in 1u64..1 << 10, len in 2u32..=10) {
        let code = BinaryWord::new(bits & ((1 << len) - 1), len).unwrap();
        let mut mirrored: Vec<_> = code_to_orbit(code).unwrap().iter().map(|p| p.mirror()).collect();
        mirrored.sort();
        prop_assert_eq!(mirrored, code_to_orbit(code.complement()).unwrap());
    }

    #[test]
    fn critical_cycle_decodes_to_an_orbit(values in prop::collection::vec(-1.0f64..1.0, 64)) {
        let mut values = values;
        values[63] = values[0];
        let g = build_graph_from_values(6, &values, &[0.0; 64]).unwrap();
        let cycle = mcm1(&g.view()).unwrap();
        let labels = g.labels(&cycle);
        let code = cycle_to_code(&labels).unwrap();
        prop_assert_eq!(code.len() as usize, cycle.period);
        prop_assert_eq!(code, code.least_rotation());
        let orbit = code_to_orbit(code).unwrap();
        prop_assert!(!orbit.is_empty());
    }
}
