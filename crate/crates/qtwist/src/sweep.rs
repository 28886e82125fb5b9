//! Batch verification over a corpus and a range of discriminants.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use qtwist_core::arith::{is_fundamental_discriminant, kronecker, FundamentalDiscriminant};
use qtwist_core::curves::{minimal_model, WeierstrassModel};
use qtwist_core::twistlaws::{
    canonical_setup, lemma32_check, lemma33_check, quadrec_exponent, quadrec_symbol,
    tamrecrel_check_with, theorem13_quantity, theorem31_quantity, two_adic_case_check,
    u_of_discriminant, ExponentVerdict, TwistData, TwistSetup,
};
use qtwist_core::{BigRational, Error};

use crate::corpus::CurveRecord;
use crate::report::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Single-discriminant quantity only.
    Thm13,
    /// Pair quantity and its bookkeeping only.
    Thm31,
    /// Local identities on singles and pairs.
    Lemmas,
    All,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Thm13 => "thm13",
            Mode::Thm31 => "thm31",
            Mode::Lemmas => "lemmas",
            Mode::All => "all",
        }
    }

    fn singles(self) -> bool {
        self != Mode::Thm31
    }

    fn pairs(self) -> bool {
        self != Mode::Thm13
    }

    fn quantities(self) -> bool {
        self != Mode::Lemmas
    }

    fn lemmas(self) -> bool {
        matches!(self, Mode::Lemmas | Mode::All)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub d_max: u64,
    pub pair_d_max: u64,
    pub mode: Mode,
}

impl SweepConfig {
    /// Pairs range over discriminants up to `min(d_max, 100)`.
    pub fn new(d_max: u64, mode: Mode) -> Self {
        Self {
            d_max,
            pair_d_max: d_max.min(100),
            mode,
        }
    }
}

#[derive(Default)]
struct CurveOutcome {
    single: Vec<SingleRecord>,
    pairs: Vec<PairRecord>,
    failures: Vec<Failure>,
    checks: BTreeMap<String, Tally>,
    u_outside: usize,
}

impl CurveOutcome {
    fn check(
        &mut self,
        name: &str,
        ok: bool,
        curve: &str,
        ds: &[&BigInt],
        detail: impl FnOnce() -> String,
    ) {
        let t = self.checks.entry(name.to_string()).or_default();
        if ok {
            t.passed += 1;
        } else {
            t.failed += 1;
            self.failures.push(Failure {
                curve: curve.to_string(),
                discriminants: ds.iter().map(|d| d.to_string()).collect(),
                check: name.to_string(),
                detail: detail(),
            });
        }
    }

    fn error(&mut self, curve: &str, ds: &[&BigInt], e: &Error) {
        self.check("error", false, curve, ds, || e.to_string());
    }
}

/// Positive fundamental discriminants `2 <= D <= max`.
pub fn fundamental_discriminants(max: u64) -> Vec<BigInt> {
    (2..=max)
        .map(BigInt::from)
        .filter(is_fundamental_discriminant)
        .collect()
}

fn verdict_json(v: &ExponentVerdict) -> QuantityJson {
    QuantityJson {
        quantity: v.quantity.to_string(),
        exponent: v.exponent,
        is_power_of_two: v.is_power_of_two,
        is_even_exponent: v.is_even_exponent,
        u: v.terms.u.iter().map(|(_, u)| u.to_string()).collect(),
        omega_n_minus: v.terms.omega_n_minus,
        twist_tamagawa: v
            .terms
            .twist_tamagawa
            .iter()
            .map(|(d, l, c)| (d.to_string(), l.to_string(), *c))
            .collect(),
        c_hat: v
            .terms
            .c_hat
            .iter()
            .map(|(q, c)| (q.to_string(), *c))
            .collect(),
    }
}

/// Twist data per discriminant, computed once per curve.
struct TwistCache<'a> {
    curve: &'a WeierstrassModel,
    primes: Vec<BigInt>,
    cache: BTreeMap<BigInt, TwistData>,
}

impl TwistCache<'_> {
    fn get(&mut self, d: &BigInt) -> Result<TwistData, Error> {
        if let Some(t) = self.cache.get(d) {
            return Ok(t.clone());
        }
        let fd = if d.is_one() {
            FundamentalDiscriminant::one()
        } else {
            FundamentalDiscriminant::new(d)?
        };
        let t = TwistData::compute(self.curve, &fd, &self.primes)?;
        self.cache.insert(d.clone(), t.clone());
        Ok(t)
    }

    fn setup(&mut self, ds: &[BigInt]) -> Option<Result<TwistSetup, Error>> {
        let setup = match canonical_setup(self.curve, ds) {
            Ok(s) => s,
            Err(Error::InvalidSetup(_)) => return None,
            Err(e) => return Some(Err(e)),
        };
        let twists = ds
            .iter()
            .map(|d| self.get(d))
            .collect::<Result<Vec<_>, _>>();
        Some(twists.and_then(|t| setup.with_twists(t)))
    }
}

fn single_instance(
    out: &mut CurveOutcome,
    label: &str,
    setup: &TwistSetup,
    mode: Mode,
) -> Result<SingleRecord, Error> {
    let e = setup.curve();
    let t = &setup.twists()?[0];
    let d = t.discriminant.value();
    let mut rec = SingleRecord {
        curve: label.to_string(),
        d: d.to_string(),
        n_plus: setup.n_plus().to_string(),
        n_minus: setup.n_minus().to_string(),
        twist_minimal_model: t.minimal.minimal.to_string(),
        quantity: None,
        symbol: None,
        odd_twist_tamagawa: None,
        u: None,
        two_adic: None,
        local: t.local.iter().map(LocalJson::from).collect(),
    };
    if mode.quantities() {
        let v = theorem13_quantity(setup)?;
        out.check("exponent", v.is_even_exponent, label, &[d], || {
            format!("quantity {}", v.quantity)
        });
        rec.quantity = Some(verdict_json(&v));
    }
    if !mode.lemmas() {
        return Ok(rec);
    }

    let b = quadrec_exponent(setup);
    let closed = quadrec_symbol(e.discriminant(), &t.discriminant, b)?;
    let direct = kronecker(e.discriminant(), t.discriminant.odd_part())?;
    out.check("symbol", closed == direct, label, &[d], || {
        format!("closed form {closed}, direct {direct}")
    });
    rec.symbol = Some(SymbolJson {
        b,
        closed_form: closed,
        direct,
    });

    let trr = tamrecrel_check_with(e, t)?;
    out.check("odd_twist_tamagawa", trr.holds, label, &[d], || {
        format!("{trr:?}")
    });
    rec.odd_twist_tamagawa = Some(OddTamagawaJson {
        product: trr.product.to_string(),
        symbol: trr.symbol,
        is_square: trr.is_square,
        fast_path_mismatches: trr
            .fast_path_mismatches
            .iter()
            .map(|l| l.to_string())
            .collect(),
        holds: trr.holds,
    });

    let measured = t.u();
    let closed_u = u_of_discriminant(e, &t.discriminant);
    let in_range =
        measured == BigRational::one() || measured == BigRational::from_integer(BigInt::from(2));
    if !in_range {
        out.u_outside += 1;
    }
    out.check("u_range", in_range, label, &[d], || {
        format!("measured u = {measured}")
    });
    let agrees =
        matches!(&closed_u, Ok(u) if BigRational::from_integer(BigInt::from(*u)) == measured);
    out.check("u_closed_form", agrees, label, &[d], || {
        format!("closed form {closed_u:?}, measured {measured}")
    });
    rec.u = Some(UJson {
        closed_form: closed_u.ok(),
        measured: measured.to_string(),
    });

    if let Some(c) = two_adic_case_check(e, t)? {
        out.check("two_adic_table", c.holds, label, &[d], || format!("{c:?}"));
        rec.two_adic = Some(TwoAdicJson {
            case: format!("{:?}", c.case),
            pattern: format!("{:?}", c.pattern),
            model: c.model.to_string(),
            predicted: (c.predicted_kodaira.to_string(), c.predicted_tamagawa),
            measured: (c.kodaira.to_string(), c.tamagawa),
            residue_profile_agrees: c.residue_profile_agrees,
            holds: c.holds,
        });
    }
    Ok(rec)
}

fn pair_instance(
    out: &mut CurveOutcome,
    label: &str,
    setup: &TwistSetup,
    mode: Mode,
) -> Result<PairRecord, Error> {
    let ds: Vec<&BigInt> = setup.discriminants().iter().map(|d| d.value()).collect();
    let mut rec = PairRecord {
        curve: label.to_string(),
        d1: ds[0].to_string(),
        d2: ds[1].to_string(),
        n_plus: setup.n_plus().to_string(),
        n_minus: setup.n_minus().to_string(),
        quantity: None,
        inert_identity: None,
        square_class: None,
    };
    if mode.quantities() {
        let v = theorem31_quantity(setup)?;
        let q = &v.verdict.quantity;
        out.check(
            "pair_exponent",
            v.verdict.is_even_exponent,
            label,
            &ds,
            || format!("quantity {q}"),
        );
        out.check(
            "omega_parity",
            v.omega_parity_holds,
            label,
            &ds,
            String::new,
        );
        out.check("c_hat_ratio", v.c_hat_ratio_holds, label, &ds, || {
            format!("{:?}", v.c_hat_ratio_exponent)
        });
        let partials_ok = v.matches_partials && v.partials.iter().all(|p| p.is_even_exponent);
        out.check("partials", partials_ok, label, &ds, || {
            format!("{} and {}", v.partials[0].quantity, v.partials[1].quantity)
        });
        rec.quantity = Some(PairQuantityJson {
            combined: verdict_json(&v.verdict),
            partials: [verdict_json(&v.partials[0]), verdict_json(&v.partials[1])],
            omega_parity_holds: v.omega_parity_holds,
            c_hat_ratio_exponent: v.c_hat_ratio_exponent,
            matches_partials: v.matches_partials,
        });
    }
    if mode.lemmas() {
        let mut ids = Vec::new();
        for q in setup.n_minus_primes() {
            let c = lemma32_check(setup, &q)?;
            out.check("inert_identity", c.holds, label, &ds, || {
                format!("q = {q}: {} vs {}", c.lhs, c.rhs)
            });
            ids.push(IdentityJson {
                q: q.to_string(),
                lhs: c.lhs.to_string(),
                rhs: c.rhs.to_string(),
                holds: c.holds,
            });
        }
        rec.inert_identity = Some(ids);
        let c = lemma33_check(setup)?;
        let ok = c.holds && c.n_plus_mismatches.is_empty();
        out.check("square_class", ok, label, &ds, || format!("{c:?}"));
        rec.square_class = Some(SquareClassJson {
            lhs: c.lhs.to_string(),
            rhs: c.rhs.to_string(),
            holds: c.holds,
            n_plus_mismatches: c.n_plus_mismatches.iter().map(|l| l.to_string()).collect(),
        });
    }
    Ok(rec)
}

fn sweep_curve(
    rec: &CurveRecord,
    cfg: &SweepConfig,
    singles: &[BigInt],
    pair_ds: &[BigInt],
) -> CurveOutcome {
    let mut out = CurveOutcome::default();
    let label = rec.label.as_str();
    let e = match minimal_model(&rec.curve) {
        Ok(m) => m.minimal,
        Err(err) => {
            out.error(label, &[], &err);
            return out;
        }
    };
    let primes: Vec<BigInt> = match qtwist_core::arith::factorize(&rec.conductor) {
        Ok(f) => f.primes().cloned().collect(),
        Err(err) => {
            out.error(label, &[], &err);
            return out;
        }
    };
    let mut cache = TwistCache {
        curve: &e,
        primes,
        cache: BTreeMap::new(),
    };

    if cfg.mode.singles() {
        for d in singles {
            match cache.setup(std::slice::from_ref(d)) {
                None => {}
                Some(Err(err)) => out.error(label, &[d], &err),
                Some(Ok(setup)) => match single_instance(&mut out, label, &setup, cfg.mode) {
                    Ok(r) => out.single.push(r),
                    Err(err) => out.error(label, &[d], &err),
                },
            }
        }
    }
    if cfg.mode.pairs() {
        for (i, d1) in pair_ds.iter().enumerate() {
            for d2 in &pair_ds[i + 1..] {
                let ds = [d1.clone(), d2.clone()];
                match cache.setup(&ds) {
                    None => {}
                    Some(Err(err)) => out.error(label, &[d1, d2], &err),
                    Some(Ok(setup)) => match pair_instance(&mut out, label, &setup, cfg.mode) {
                        Ok(r) => out.pairs.push(r),
                        Err(err) => out.error(label, &[d1, d2], &err),
                    },
                }
            }
        }
    }
    out
}

/// Runs every check selected by `cfg.mode` over every valid instance. The
/// result does not depend on scheduling; call inside a rayon pool to bound
/// the thread count.
pub fn run_sweep(corpus: &[CurveRecord], cfg: &SweepConfig) -> VerificationReport {
    let start = Instant::now();
    let singles = fundamental_discriminants(cfg.d_max);
    let pair_ds: Vec<BigInt> = std::iter::once(BigInt::one())
        .chain(fundamental_discriminants(cfg.pair_d_max))
        .collect();

    let outcomes: Vec<(CurveOutcome, f64)> = corpus
        .par_iter()
        .map(|rec| {
            let t = Instant::now();
            let o = sweep_curve(rec, cfg, &singles, &pair_ds);
            (o, t.elapsed().as_secs_f64())
        })
        .collect();

    let mut summary = Summary::default();
    let mut single = Vec::new();
    let mut pairs = Vec::new();
    let mut failures = Vec::new();
    let mut timing = Timing::default();
    for (rec, (o, secs)) in corpus.iter().zip(outcomes) {
        for (name, t) in o.checks {
            let s = summary.checks.entry(name).or_default();
            s.passed += t.passed;
            s.failed += t.failed;
        }
        summary.u_outside_one_two += o.u_outside;
        single.extend(o.single);
        pairs.extend(o.pairs);
        failures.extend(o.failures);
        timing.per_curve_seconds.insert(rec.label.clone(), secs);
    }
    summary.single_instances = single.len();
    summary.pair_instances = pairs.len();
    summary.failures = failures.len();
    timing.wall_seconds = start.elapsed().as_secs_f64();

    VerificationReport {
        config: SweepEcho {
            curves: corpus.len(),
            d_max: cfg.d_max,
            pair_d_max: cfg.pair_d_max,
            mode: cfg.mode.as_str().to_string(),
        },
        summary,
        single,
        pairs,
        failures,
        timing,
    }
}
