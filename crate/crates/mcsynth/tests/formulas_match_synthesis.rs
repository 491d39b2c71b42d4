mod common;

use common::*;
use mcsynth::ata::{synth_ata, SynthOptions};
use mcsynth::circuit::{counts, GateCounts};
use mcsynth::cost::{evaluate, registry, Metric};
use mcsynth::{Ancilla, GateKind, MCGateSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn value(id: &str, n: usize, m: usize, n_chi: usize) -> usize {
    evaluate(id, n, 0, m, n_chi).unwrap().as_int().unwrap() as usize
}

fn count_of(g: &GateCounts, metric: Metric) -> Option<usize> {
    match metric {
        Metric::CnotCost => Some(g.cnot),
        Metric::TCost => Some(g.t),
        Metric::HCost => Some(g.h),
        Metric::SCost => Some(g.s),
        Metric::Rotations => Some(g.rot),
        _ => None,
    }
}

/// Every count formula of `family` equals the synthesized count.
fn assert_family(family: &str, spec: &MCGateSpec, options: SynthOptions, m: usize, n_chi: usize) {
    let g = counts(&synth_ata(spec, options).unwrap()).unwrap();
    let prefix = format!("{family}.");
    for f in registry()
        .formulas()
        .iter()
        .filter(|f| f.id.starts_with(&prefix))
    {
        if let Some(actual) = count_of(&g, f.metric) {
            let want = value(&f.id, spec.n, m, n_chi);
            assert_eq!(actual, want, "{} at n={} m={m} n_chi={n_chi}", f.id, spec.n);
        }
    }
}

#[test]
fn single_target_families_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 6..=24 {
        let su2 = MCGateSpec::mcsu2(n, random_su2(&mut rng));
        assert_family("mcsu2", &su2, SynthOptions::default(), 1, 0);
        assert_family("tdepth", &su2, SynthOptions::tdepth(), 1, 0);
        let mcx = MCGateSpec::mcx(n, 1);
        assert_family("mcx", &mcx, SynthOptions::default(), 1, 0);
        assert_family("mcx_tdepth", &mcx, SynthOptions::tdepth(), 1, 0);
        let mcu2 = MCGateSpec::mcu2(n, random_u2(&mut rng));
        assert_family("mcu2", &mcu2, SynthOptions::default(), 1, 0);
        assert_family("mcu2_tdepth", &mcu2, SynthOptions::tdepth(), 1, 0);
    }
    assert_family("mcx", &MCGateSpec::mcx(5, 1), SynthOptions::default(), 1, 0);
}

#[test]
fn multi_target_families_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 6..=14 {
        for m in 1..=5 {
            let ops = (0..m).map(|_| random_su2(&mut rng)).collect();
            let spec = MCGateSpec::new(GateKind::MultiSu2(ops), n, Ancilla::None).unwrap();
            assert_family("mcmtsu2", &spec, SynthOptions::default(), m, 0);
            let ops = (0..m).map(|_| random_u2(&mut rng)).collect();
            let spec = MCGateSpec::new(GateKind::MultiU2(ops), n, Ancilla::Clean(1)).unwrap();
            assert_family("mcu2", &spec, SynthOptions::default(), m, 0);
            if m >= 2 {
                let spec = MCGateSpec::new(GateKind::MultiX(m), n, Ancilla::None).unwrap();
                assert_family("mcmtx", &spec, SynthOptions::default(), m, 0);
            }
        }
    }
}

#[test]
fn ancilla_families_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 6..=22 {
        for n_chi in 0..=(n - 6) / 2 {
            for m in [1, 3] {
                let ops = (0..m).map(|_| random_su2(&mut rng)).collect();
                let anc = if n_chi == 0 {
                    Ancilla::None
                } else {
                    Ancilla::Dirty(n_chi)
                };
                let spec = MCGateSpec::new(GateKind::MultiSu2(ops), n, anc).unwrap();
                assert_family("ancil", &spec, SynthOptions::default(), m, n_chi);
                assert_family("ancil_tdepth", &spec, SynthOptions::tdepth(), m, n_chi);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn each_extra_ancilla_saves_eight_cnots(n in 8usize..30, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = random_su2(&mut rng);
        let mut prev = None;
        for n_chi in 0..=(n - 6) / 2 {
            let anc = if n_chi == 0 { Ancilla::None } else { Ancilla::Dirty(n_chi) };
            let spec = MCGateSpec::new(GateKind::Su2(target), n, anc).unwrap();
            let g = counts(&synth_ata(&spec, SynthOptions::default()).unwrap()).unwrap();
            if let Some((c, t)) = prev {
                prop_assert_eq!(c - g.cnot, 8);
                prop_assert_eq!(t - g.t, 16);
            }
            prev = Some((g.cnot, g.t));
        }
    }
}
