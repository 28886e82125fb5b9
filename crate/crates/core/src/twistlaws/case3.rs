use alloc::collections::BTreeSet;

/// `(Δ mod 8, m mod 4)` pairs on which the twist has `c2 = 2`.
pub const C2_PROFILE: [(u8, u8); 4] = [(3, 1), (5, 1), (5, 3), (7, 3)];
/// `(Δ mod 8, m mod 4)` pairs on which the twist has `c2 = 4`.
pub const C4_PROFILE: [(u8, u8); 4] = [(1, 1), (1, 3), (3, 3), (7, 1)];

/// Images of the residue classes mod 32 of `(a1, a2, a3, a4, a6, m)` in the
/// `v2(D) = 3`, `v2(c6) = 0` case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case3Enumeration {
    /// Every value of `τ` met.
    pub tau_range: BTreeSet<u8>,
    /// `(λ, μ)` over the classes with `τ = 16`.
    pub c2_profile: BTreeSet<(u8, u8)>,
    /// `(λ, μ)` over the classes with `τ = 0`.
    pub c4_profile: BTreeSet<(u8, u8)>,
    /// Number of classes visited, `a1` not counted.
    pub classes: u64,
}

impl Case3Enumeration {
    /// Whether the enumeration reproduces the two tabulated profiles and `τ ∈ {0, 16}`.
    pub fn matches_expected(&self) -> bool {
        self.tau_range == BTreeSet::from([0, 16])
            && self.c2_profile == BTreeSet::from(C2_PROFILE)
            && self.c4_profile == BTreeSet::from(C4_PROFILE)
    }
}

/// Runs through both families of residue classes mod 32. `a1` enters none of
/// `τ`, `λ`, `μ` and only has to be odd, so it is not iterated.
pub fn case3_enumeration() -> Case3Enumeration {
    let mut out = Case3Enumeration {
        tau_range: BTreeSet::new(),
        c2_profile: BTreeSet::new(),
        c4_profile: BTreeSet::new(),
        classes: 0,
    };
    let odd = || (1..32i64).step_by(2);
    let even = || (0..32i64).step_by(2);
    let by4 = || (0..32i64).step_by(4);
    let mut record = |tau: i64, lambda: i64, mu: i64| {
        let (tau, lambda, mu) = (
            tau.rem_euclid(32) as u8,
            lambda.rem_euclid(8) as u8,
            mu.rem_euclid(4) as u8,
        );
        out.tau_range.insert(tau);
        match tau {
            16 => {
                out.c2_profile.insert((lambda, mu));
            }
            0 => {
                out.c4_profile.insert((lambda, mu));
            }
            _ => {}
        }
        out.classes += 1;
    };
    for y in odd() {
        for x2 in 0..32i64 {
            for x3 in by4() {
                // a4 even, a6 odd.
                for x4 in even() {
                    for x6 in odd() {
                        let tau =
                            4 + 16 * x2 + 8 * x4 + 4 * x6 - 2 * y - 2 * y * x6 * x6 - 4 * y * x6;
                        record(tau, x4 * x4 + 4 * x2 - x6, y);
                    }
                }
                // a4 odd, a6 even.
                for _x4 in odd() {
                    for x6 in even() {
                        let tau = x3 * x3 - 2 * y * x6 * x6 + 4 * x6;
                        record(tau, x3 - x6 + 1, y);
                    }
                }
            }
        }
    }
    out
}
