// Copyright 2026 The zeno-dfs Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zeno_dfs::gates::{build_commuting, build_general, CommutingCoupling, GeneralCoupling};
use zeno_dfs::spin::{collective_j, commutator_norm, PauliAxis};

const DRAWS: usize = 100;

fn commuting_draw(rng: &mut ChaCha8Rng) -> GeneralCoupling<f64> {
    let p: Vec<f64> = (0..CommutingCoupling::<f64>::NUM_PARAMETERS)
        .map(|_| rng.gen_range(-2.0..2.0))
        .collect();
    CommutingCoupling::from_slice(&p).unwrap().to_general()
}

/// Random coupling with at least one entry outside the commuting pattern.
fn forbidden_draw(rng: &mut ChaCha8Rng) -> GeneralCoupling<f64> {
    let mut g = if rng.gen_bool(0.5) {
        commuting_draw(rng)
    } else {
        GeneralCoupling {
            fields: std::array::from_fn(|_| Vector3::from_fn(|_, _| rng.gen_range(-2.0..2.0))),
            couplings: std::array::from_fn(|_| Matrix3::from_fn(|_, _| rng.gen_range(-2.0..2.0))),
        }
    };
    let size = rng.gen_range(0.1..1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let n = rng.gen_range(0..4);
    let k = rng.gen_range(0..6);
    match rng.gen_range(0..5) {
        0 => g.fields[n][rng.gen_range(0..2)] += size,
        1 => g.couplings[k][(rng.gen_range(0..2), 2)] += size,
        2 => g.couplings[k][(2, rng.gen_range(0..2))] += size,
        3 => g.couplings[k][(0, 0)] += size,
        _ => g.couplings[k][(0, 1)] += size,
    }
    g
}

#[test]
fn commutes_exactly_when_pattern_matches() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let jz = collective_j::<f64>(PauliAxis::Z);
    for _ in 0..DRAWS {
        let g = commuting_draw(&mut rng);
        assert!(g.forbidden_magnitude() == 0.0);
        let (h, _) = build_general(&g);
        assert!(commutator_norm(&h, &jz) < 1e-13);
    }
    for _ in 0..DRAWS {
        let g = forbidden_draw(&mut rng);
        assert!(g.forbidden_magnitude() > 0.0);
        let (h, _) = build_general(&g);
        let norm = commutator_norm(&h, &jz);
        assert!(norm > 1e-6, "forbidden draw commutes: {norm:e}");
    }
}

#[test]
fn commuting_builder_is_the_general_one_restricted() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..DRAWS {
        let p: Vec<f64> = (0..22).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let c = CommutingCoupling::from_slice(&p).unwrap();
        let (g, _) = build_general(&c.to_general());
        assert!((g - build_commuting(&c)).norm() < 1e-13);
    }
}
