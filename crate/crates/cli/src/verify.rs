//! Built-in check suites at fixed small parameters. Reports contain no
//! timings, so a fixed seed gives byte-identical output.

use apncert_core::bounds::{admissible_degrees, n1, n1_holds, n2, n2_holds};
use apncert_core::lalpha::{b1_closed_form, d_alpha, l_alpha, l_alpha_monomial, lift_through_t, scale_weighted, t_alpha};
use apncert_core::morse::{
    alpha_scan, check_nondegenerate, check_nondegenerate_on_l, critical_value_poly, has_nondegenerate_critical_points,
    interp_pi_degree, interp_resultant_degree, pi_d, pi_value, trace_condition_count, trace_discriminant, ScanMode,
    TracePrediction,
};
use apncert_core::sample::{random_poly_a1_nonzero, trial_rng, Purpose};
use apncert_core::structure::{gcd_check, structure_report};
use apncert_core::uniformity::{certify_max, ddt_row, solutions_count};
use apncert_core::{Embedding, FieldCtx, FieldElem, UPoly};
use clap::ValueEnum;
use num_integer::Integer;
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Lalpha,
    Morse,
    Structure,
    Pi,
    Bounds,
    Uniformity,
    All,
}

/// Runtime tiers: fast is seconds, standard minutes, slow adds the
/// certification at n = 28.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Fast,
    Standard,
    Slow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Infeasible,
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    /// The statement being checked.
    pub anchor: &'static str,
    pub tier: Tier,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub tier: Tier,
    pub claims: Vec<Claim>,
    pub passed: usize,
    pub failed: usize,
    pub infeasible: usize,
    pub status: Status,
}

type Outcome = Result<(Status, String), String>;

struct Runner {
    seed: u64,
    tier: Tier,
    claims: Vec<Claim>,
}

impl Runner {
    fn claim(&mut self, id: impl Into<String>, anchor: &'static str, tier: Tier, run: impl FnOnce(u64) -> Outcome) {
        if tier > self.tier {
            return;
        }
        let id = id.into();
        // per-claim seed, independent of which other claims run
        let seed = trial_rng(self.seed, Purpose::Verify, fnv(&id)).random();
        let (status, details) = match run(seed) {
            Ok(r) => r,
            Err(e) => (Status::Fail, e),
        };
        self.claims.push(Claim { id, anchor, tier, status, details });
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn err<T>(r: apncert_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn verdict(ok: bool, details: String) -> Outcome {
    Ok((if ok { Status::Pass } else { Status::Fail }, details))
}

pub fn run_suite(suite: Suite, seed: u64, tier: Tier) -> VerifyReport {
    let mut r = Runner { seed, tier, claims: Vec::new() };
    let all = suite == Suite::All;
    if all || suite == Suite::Lalpha {
        lalpha_suite(&mut r);
    }
    if all || suite == Suite::Morse {
        morse_suite(&mut r);
    }
    if all || suite == Suite::Pi {
        pi_suite(&mut r);
    }
    if all || suite == Suite::Structure {
        structure_suite(&mut r);
    }
    if all || suite == Suite::Bounds {
        bounds_suite(&mut r);
    }
    if all || suite == Suite::Uniformity {
        uniformity_suite(&mut r);
    }
    let count = |s| r.claims.iter().filter(|c| c.status == s).count();
    let (passed, failed, infeasible) = (count(Status::Pass), count(Status::Fail), count(Status::Infeasible));
    VerifyReport {
        suite,
        seed,
        tier,
        passed,
        failed,
        infeasible,
        status: if failed == 0 { Status::Pass } else { Status::Fail },
        claims: r.claims,
    }
}

fn field(n: u32) -> FieldCtx {
    FieldCtx::default_for(n).expect("n <= 64")
}

fn lalpha_suite(r: &mut Runner) {
    r.claim("lalpha.contract", "L_a f(x(x+a)) = D_a f(x), b0 = a1 a, two-branch b1", Tier::Fast, |seed| {
        let k = field(16);
        let mut rng = trial_rng(seed, Purpose::Verify, 0);
        for (i, m) in [12usize, 20, 24].into_iter().cycle().take(300).enumerate() {
            let f = random_poly_a1_nonzero(&k, m, seed, i as u64);
            let a = k.random_nonzero(&mut rng);
            let b = err(l_alpha(&f, a))?;
            let direct = &f.shift(a) + &f;
            if err(b.l_alpha_f.compose(&t_alpha(&k, a)))? != direct {
                return Err(format!("composition fails for m={m}, alpha={a}"));
            }
            if b.b0() != k.mul(f.a(1), a) || b.b1() != err(b1_closed_form(&f, a))? {
                return Err(format!("b0/b1 mismatch for m={m}, alpha={a}"));
            }
            if b.l_alpha_f.degree() != Some(b.d) {
                return Err(format!("deg L != d for m={m} with a1 != 0"));
            }
        }
        verdict(true, "300 random (f, alpha) over GF(2^16), m in {12, 20, 24}".into())
    });
    r.claim("lalpha.linearity", "L_a is linear over the coefficient field", Tier::Fast, |seed| {
        let k = field(12);
        let mut rng = trial_rng(seed, Purpose::Verify, 0);
        for _ in 0..200 {
            let (f, g) = (UPoly::random(&k, 24, &mut rng), UPoly::random(&k, 20, &mut rng));
            let (a, c) = (k.random_nonzero(&mut rng), k.random(&mut rng));
            let lift = |h: &UPoly| err(d_alpha(h, a)).and_then(|dh| err(lift_through_t(&dh, a)));
            if lift(&(&f.scale(c) + &g))? != &lift(&f)?.scale(c) + &lift(&g)? {
                return Err(format!("linearity fails at alpha={a}"));
            }
        }
        verdict(true, "200 random pairs".into())
    });
    r.claim("lalpha.homogeneity", "b_i is weighted homogeneous of degree 2i + 2", Tier::Fast, |seed| {
        let k = field(16);
        let mut rng = trial_rng(seed, Purpose::Verify, 0);
        for (i, m) in [12usize, 20, 24].into_iter().cycle().take(300).enumerate() {
            let f = random_poly_a1_nonzero(&k, m, seed, i as u64);
            let (a, lam) = (k.random_nonzero(&mut rng), k.random_nonzero(&mut rng));
            let (b, bl) = (err(l_alpha(&f, a))?, err(l_alpha(&scale_weighted(&f, lam), k.mul(lam, a)))?);
            for j in 0..=b.d {
                if bl.b[j] != k.mul(k.pow(lam, 2 * j as u128 + 2), b.b[j]) {
                    return Err(format!("b_{j} not homogeneous for m={m}"));
                }
            }
        }
        verdict(true, "300 random scalings".into())
    });
    r.claim("lalpha.monomial", "closed form of L_a(x^m) for admissible m <= 100", Tier::Fast, |seed| {
        let k = field(16);
        let mut rng = trial_rng(seed, Purpose::Verify, 0);
        let degrees = admissible_degrees(100);
        for p in &degrees {
            let xm = UPoly::monomial(&k, FieldElem::ONE, p.m as usize);
            for _ in 0..20 {
                let a = k.random_nonzero(&mut rng);
                if err(l_alpha_monomial(&k, p.m, a))? != err(l_alpha(&xm, a))?.l_alpha_f {
                    return Err(format!("m={}: closed form differs at alpha={a}", p.m));
                }
            }
        }
        let ms: Vec<u64> = degrees.iter().map(|p| p.m).collect();
        verdict(true, format!("m in {ms:?}, 20 alphas each"))
    });
}

fn morse_suite(r: &mut Runner) {
    r.claim("morse.dual_path", "Res((D_a f)', (D_a f)^[2]) != 0 iff gcd(g', g^[2]) = 1 for g = L_a f", Tier::Fast, |seed| {
        let k = field(12);
        let mut rng = trial_rng(seed, Purpose::Verify, 0);
        let mut bad = 0;
        for i in 0..500 {
            let b = err(l_alpha(&random_poly_a1_nonzero(&k, 12, seed, i), k.random_nonzero(&mut rng)))?;
            let via_d = err(check_nondegenerate(&b))?.0;
            if via_d != err(check_nondegenerate_on_l(&b))? {
                return Err(format!("paths disagree at alpha={}", b.alpha));
            }
            bad += !via_d as u32;
        }
        verdict(true, format!("500 random (f, alpha), m=12; {bad} degenerate"))
    });
    r.claim("morse.trace_count_m24", "trace-condition count is 2^(n-1) - 1, or 2^n - 1 when a2^2 + a1 a3 = 0", Tier::Fast, |seed| {
        let k = field(10);
        let mut counts = Vec::new();
        for i in 0..4u64 {
            let mut f = random_poly_a1_nonzero(&k, 24, seed, i);
            if i % 2 == 1 {
                let a3 = err(k.div(k.sqr(f.a(2)), f.a(1)))?;
                let mut c = f.coeffs().to_vec();
                c[24 - 3] = a3;
                f = UPoly::new(&k, c);
            }
            let want = if trace_discriminant(&f).is_zero() { 1023 } else { 511 };
            let got = err(trace_condition_count(&f))?;
            if got != want {
                return Err(format!("count {got}, expected {want}"));
            }
            counts.push(got);
        }
        verdict(true, format!("n=10 counts {counts:?}"))
    });
    r.claim("morse.trace_count_m12", "m ≡ 4 (mod 8): lower bound, and which reading the vanishing-discriminant count matches", Tier::Fast, |seed| {
        let mut notes = Vec::new();
        for n in [9u32, 10] {
            let k = field(n);
            let f = random_poly_a1_nonzero(&k, 12, seed, n as u64);
            let c = err(trace_condition_count(&f))?;
            let pred = TracePrediction::for_poly(&f);
            if pred.check(c) == Some(false) {
                return Err(format!("n={n}: count {c} below the bound"));
            }
            let a3 = err(k.div(k.sqr(f.a(2)), f.a(1)))?;
            let mut co = f.coeffs().to_vec();
            co[12 - 3] = a3;
            let g = UPoly::new(&k, co);
            let cg = err(trace_condition_count(&g))?;
            let readings = TracePrediction::for_poly(&g).matching_readings(cg);
            if readings.is_empty() {
                return Err(format!("n={n}: vanishing-discriminant count {cg} matches no reading"));
            }
            notes.push(format!("n={n}: generic {c}, vanishing discriminant {cg} matches {readings:?}"));
        }
        verdict(true, notes.join("; "))
    });
    r.claim("morse.scan_bounds", "at most (m-1)(m-4) degenerate and (5d+4)e coinciding alphas", Tier::Fast, |seed| {
        let k = field(12);
        let f = random_poly_a1_nonzero(&k, 12, seed, 0);
        let s = err(alpha_scan(&f, ScanMode::Exhaustive))?;
        let c = s.counts;
        verdict(
            s.violations.is_empty() && c.certified > 0,
            format!(
                "m=12 n=12: {} degenerate (<= 88), {} coinciding (<= 29), {} certified",
                c.fail_nondegenerate, c.fail_distinct_values, c.certified
            ),
        )
    });
    r.claim("morse.resultant_degree_m12", "alpha-degree of the nondegeneracy resultant is (m-1)(m-4) = 88", Tier::Fast, |seed| {
        let k = field(8);
        let mut degrees = Vec::new();
        for i in 0..20 {
            degrees.push(err(interp_resultant_degree(12, &k, seed.wrapping_add(i)))?.degree);
        }
        let max = degrees.iter().copied().max().unwrap_or(0);
        verdict(max == 88, format!("max over 20 seeds: {max}"))
    });
    r.claim("morse.resultant_degree_m20", "alpha-degree of the nondegeneracy resultant is (m-1)(m-4) = 304", Tier::Standard, |seed| {
        let k = field(10);
        let mut max = 0;
        for i in 0..3 {
            max = max.max(err(interp_resultant_degree(20, &k, seed.wrapping_add(i)))?.degree);
        }
        verdict(max == 304, format!("max over 3 seeds: {max}"))
    });
}

fn pi_suite(r: &mut Runner) {
    r.claim("pi.degree_m12", "b0^(de) Pi_d has alpha-degree (5d+4)e = 29 and leading coefficient a0^2 a1^5", Tier::Fast, |seed| {
        let k = field(10);
        for i in 0..5 {
            let p = err(interp_pi_degree(12, &k, seed.wrapping_add(i)))?;
            let lead = k.mul(k.sqr(p.f.a(0)), k.pow(p.f.a(1), 5));
            if p.degree != 29 || p.leading != lead {
                return Err(format!("degree {}, leading {} vs {lead}", p.degree, p.leading));
            }
        }
        verdict(true, "5 seeds over GF(2^10)".into())
    });
    r.claim("pi.degree_m20", "b0^(de) Pi_d has alpha-degree 294 and leading coefficient a0^12 a1^54", Tier::Standard, |seed| {
        let k = field(10);
        let p = err(interp_pi_degree(20, &k, seed))?;
        let lead = k.mul(k.pow(p.f.a(0), 12), k.pow(p.f.a(1), 54));
        verdict(p.degree == 294 && p.leading == lead, format!("degree {}", p.degree))
    });
    r.claim("pi.homogeneity", "b0^(de) Pi_d scales by lambda^((6d+4)e) and mu^((d+2)e)", Tier::Fast, |seed| {
        let k = field(16);
        let mut rng = trial_rng(seed, Purpose::Verify, 0);
        let mut done = 0u64;
        let mut i = 0;
        while done < 100 {
            i += 1;
            let f = random_poly_a1_nonzero(&k, 12, seed, i);
            let a = k.random_nonzero(&mut rng);
            let b = err(l_alpha(&f, a))?;
            if !err(check_nondegenerate(&b))?.0 {
                continue;
            }
            let v = err(pi_value(&b))?;
            let (lam, mu) = (k.random_nonzero(&mut rng), k.random_nonzero(&mut rng));
            let vl = err(pi_value(&err(l_alpha(&scale_weighted(&f, lam), k.mul(lam, a)))?))?;
            let vm = err(pi_value(&err(l_alpha(&f.scale(mu), a))?))?;
            if vl != k.mul(k.pow(lam, 34), v) || vm != k.mul(k.pow(mu, 7), v) {
                return Err(format!("scaling fails at alpha={a}"));
            }
            done += 1;
        }
        verdict(true, "100 scalings, m=12: exponents 34 and 7".into())
    });
    r.claim("pi.splitting_field", "Res(c, c') equals the product of critical-value differences", Tier::Fast, |seed| {
        let k = field(8);
        let mut rng = trial_rng(seed, Purpose::Verify, 0);
        let mut checked = 0;
        while checked < 50 {
            let g = UPoly::random(&k, 5, &mut rng);
            let s = err(g.derivative().sqrt_even())?;
            if !s.is_squarefree() {
                continue;
            }
            let ext = field(8 * err(s.splitting_degree())? as u32);
            let emb = err(Embedding::new(&k, &ext))?;
            let ge = err(g.embed(&emb))?;
            let vals: Vec<_> = err(err(s.embed(&emb))?.roots())?.iter().map(|&t| ge.evaluate(t)).collect();
            let prod = ext.sqr(vals[0] + vals[1]);
            let c = err(critical_value_poly(&g, true))?;
            let res = err(c.resultant(&c.derivative()))?;
            if err(emb.embed(res))? != prod {
                return Err(format!("mismatch for {g:?}"));
            }
            if err(has_nondegenerate_critical_points(&g))? && err(pi_d(&g))? != res {
                return Err("pi_d differs from Res(c, c')".into());
            }
            checked += 1;
        }
        verdict(true, "50 random quintics over GF(2^8)".into())
    });
}

fn structure_suite(r: &mut Runner) {
    r.claim("structure.gcd", "gcd(d, 2^(2l) - 1) is 1 when gcd(r, l) = 1 and 3 when gcd(r, l) = 2", Tier::Fast, |_| {
        let mut n = 0;
        for rr in 2..=12u32 {
            for l in 1..=12u32 {
                if rr.gcd(&l) > 2 {
                    continue;
                }
                let c = err(gcd_check(rr, l))?;
                if !c.holds {
                    return Err(format!("(r, l) = ({rr}, {l}): gcd {}", c.gcd));
                }
                n += 1;
            }
        }
        verdict(true, format!("{n} pairs with r, l <= 12"))
    });
    for rr in 2..=6u32 {
        for l in 1..=6u32 {
            r.claim(
                format!("structure.grid.r{rr}.l{l}"),
                "monomial identities; trace polynomial nonzero at every tau; vanishing pair iff gcd(r, l) > 2",
                Tier::Fast,
                |_| {
                    let rep = err(structure_report(rr, l))?;
                    let Some(vp) = rep.vanishing_pairs.as_ref().filter(|_| rep.feasible) else {
                        let ok = rep.l1_closed_form_holds && rep.derivative_identity_holds;
                        let status = if ok { Status::Infeasible } else { Status::Fail };
                        return Ok((status, format!("identities hold: {ok}; ord_d(2) = {} > 64", rep.big_n)));
                    };
                    verdict(
                        rep.ok() && vp.none_vanish == (rr.gcd(&l) <= 2),
                        format!(
                            "d={}, N={}, {} taus, {} vanishing pairs, gcd(r, l) = {}",
                            rep.d,
                            rep.big_n,
                            rep.tau_count.unwrap_or(0),
                            vp.pairs.len(),
                            rr.gcd(&l)
                        ),
                    )
                },
            );
        }
    }
}

fn bounds_suite(r: &mut Runner) {
    r.claim("bounds.n1_12", "n1(12) = 9", Tier::Fast, |_| {
        let v = err(n1(12))?;
        verdict(v == 9, format!("n1(12) = {v}"))
    });
    r.claim("bounds.n2_12", "n2(12) = 28", Tier::Fast, |_| {
        let v = err(n2(12))?;
        verdict(v == 28, format!("n2(12) = {v}"))
    });
    r.claim("bounds.minimality", "n1, n2 are the least n where their inequalities hold, for admissible m <= 100", Tier::Fast, |_| {
        let mut rows = Vec::new();
        for p in admissible_degrees(100) {
            let (a, b) = (err(n1(p.m))?, err(n2(p.m))?);
            let ok = n1_holds(&p, a) && !n1_holds(&p, a - 1) && n2_holds(&p, b) && !n2_holds(&p, b - 1);
            if !ok {
                return Err(format!("m={}: thresholds {a}, {b} not minimal", p.m));
            }
            rows.push(format!("{}:{a}/{b}", p.m));
        }
        verdict(true, rows.join(" "))
    });
}

fn uniformity_suite(r: &mut Runner) {
    r.claim("uniformity.ddt_rows", "DDT rows have even counts summing to 2^n", Tier::Fast, |seed| {
        let k = field(10);
        let mut rng = trial_rng(seed, Purpose::Verify, 0);
        for i in 0..20 {
            let f = random_poly_a1_nonzero(&k, 12, seed, i);
            let row = err(ddt_row(&f, k.random_nonzero(&mut rng)))?;
            let sum: u64 = row.counts.iter().map(|&c| c as u64).sum();
            if sum != 1024 || row.counts.iter().any(|c| c % 2 == 1) || row.max_count > 10 {
                return Err(format!("bad row at alpha={}", row.alpha));
            }
        }
        verdict(true, "20 rows, m=12, n=10".into())
    });
    r.claim("uniformity.oracle_n8", "root counting agrees with the exhaustive DDT on every (alpha, beta)", Tier::Fast, |seed| {
        oracle_grid(&[(12, 8)], seed)
    });
    r.claim("uniformity.oracle_full", "root counting agrees with the exhaustive DDT on every (alpha, beta)", Tier::Standard, |seed| {
        oracle_grid(&[(12, 10), (20, 8), (20, 10)], seed)
    });
    r.claim("uniformity.certify_n16", "a certificate with m - 2 solutions below the threshold (exploratory)", Tier::Fast, |seed| {
        certify_runs(12, 16, 3, seed)
    });
    r.claim("uniformity.certify_n28", "delta(f) = m - 2 for m = 12 at n = 28", Tier::Slow, |seed| certify_runs(12, 28, 5, seed));
}

fn oracle_grid(cases: &[(usize, u32)], seed: u64) -> Outcome {
    let mut pairs = 0u64;
    for &(m, n) in cases {
        let k = field(n);
        let f = random_poly_a1_nonzero(&k, m, seed, n as u64);
        for a in k.elements().skip(1) {
            let row = err(ddt_row(&f, a))?;
            for b in k.elements() {
                if err(solutions_count(&f, a, b))? != row.count(b) as u64 {
                    return Err(format!("m={m} n={n}: mismatch at ({a}, {b})"));
                }
                pairs += 1;
            }
        }
    }
    verdict(true, format!("{pairs} pairs over {cases:?}"))
}

fn certify_runs(m: usize, n: u32, runs: u64, seed: u64) -> Outcome {
    let k = field(n);
    let mut trials = Vec::new();
    for i in 0..runs {
        let f = random_poly_a1_nonzero(&k, m, seed, i);
        let out = err(certify_max(&f, 1_000_000, seed.wrapping_add(i)))?;
        let Some(w) = out.witness() else {
            return Err(format!("run {i}: inconclusive"));
        };
        if err(solutions_count(&f, w.alpha, w.beta))? != (m - 2) as u64 {
            return Err(format!("run {i}: witness does not revalidate"));
        }
        trials.push(w.beta_trial + 1);
    }
    verdict(true, format!("{runs} witnesses with {} solutions; beta trials {trials:?}", m - 2))
}
