//! The invariant suite behind `itpda verify` and the acceptance tests.
//!
//! Each check compares two independent computations (an automaton against
//! an arithmetic oracle, a grammar against a recurrence, geometry against
//! a counting law) and reports a one-line summary.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{
    accepts_fibonacci_exact, contour_automaton, contour_letters, exact_limits, fibonacci_automaton,
    fibonacci_flag_cap, flagged, is_fibonacci, ContourParams,
};
use crate::disc::{generate_tiles, reflect, to_svg, DiscPoint, SvgOptions};
use crate::fibonacci::fib;
use crate::grammar::{contour_word, expand_level, level_counts, sample_variant_level, Grammar, Preset};
use crate::pda::{run, run_from, Configuration, Goal, Recognizer, RunLimits, Verdict};
use crate::recurrence::{growth_evidence, Family, RecurrencePair};
use crate::store::Store;
use crate::word::NodeColor;
use crate::zeckendorf::{decode, encode, ZeckendorfCode};

/// Sizes of every check. [`Scale::full`] is the acceptance scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scale {
    pub fibonacci_max: u64,
    pub countdown_max_k: usize,
    pub contour_max_n: usize,
    pub mutations: usize,
    pub level_max_n: usize,
    pub bridge_max_n: usize,
    pub factor_max_n: usize,
    pub variant_seeds: u64,
    pub variant_max_n: usize,
    pub zeck_round_trip: u64,
    pub zeck_unique: u64,
    pub reflections: usize,
    pub tile_radius: usize,
    pub render_depth: usize,
}

impl Scale {
    pub fn full() -> Self {
        Scale {
            fibonacci_max: 500,
            countdown_max_k: 12,
            contour_max_n: 8,
            mutations: 100,
            level_max_n: 15,
            bridge_max_n: 15,
            factor_max_n: 20,
            variant_seeds: 50,
            variant_max_n: 10,
            zeck_round_trip: 100_000,
            zeck_unique: 10_000,
            reflections: 1000,
            tile_radius: 4,
            render_depth: 4,
        }
    }

    /// A few seconds in a debug build.
    pub fn quick() -> Self {
        Scale {
            fibonacci_max: 100,
            countdown_max_k: 8,
            contour_max_n: 4,
            mutations: 20,
            level_max_n: 12,
            bridge_max_n: 10,
            factor_max_n: 14,
            variant_seeds: 10,
            variant_max_n: 8,
            zeck_round_trip: 10_000,
            zeck_unique: 1_000,
            reflections: 200,
            tile_radius: 3,
            render_depth: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub scale: Scale,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { scale: Scale::full(), seed: 7 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}. {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

pub const CHECKS: [(usize, &str); 9] = [
    (1, "Fibonacci lengths"),
    (2, "flag countdown replay"),
    (3, "contour words"),
    (4, "level law"),
    (5, "recurrence bridge and factor laws"),
    (6, "variant invariance"),
    (7, "Zeckendorf codes"),
    (8, "growth ratio"),
    (9, "disc geometry"),
];

/// Runs check `id` (1 to 9).
pub fn check(id: usize, cfg: &VerifyConfig) -> Option<CheckReport> {
    let &(_, title) = CHECKS.iter().find(|(i, _)| *i == id)?;
    let start = Instant::now();
    let (passed, detail) = match id {
        1 => fibonacci_lengths(cfg),
        2 => flag_countdown(cfg),
        3 => contour_words(cfg),
        4 => level_law(cfg),
        5 => recurrence_bridge(cfg),
        6 => variant_invariance(cfg),
        7 => zeckendorf_codes(cfg),
        8 => growth_ratio(),
        9 => disc_geometry(cfg),
        _ => return None,
    };
    Some(CheckReport { id, title, passed, detail, elapsed: start.elapsed() })
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckReport> {
    CHECKS.iter().filter_map(|(id, _)| check(*id, cfg)).collect()
}

type Outcome = (bool, String);

fn fibonacci_lengths(cfg: &VerifyConfig) -> Outcome {
    let start = Instant::now();
    let pda = fibonacci_automaton();
    let a = pda.letter("a").expect("letter a");
    let max = cfg.scale.fibonacci_max;
    let (mut engine_ok, mut exact_ok, mut accepted) = (0u64, 0u64, 0u64);
    let mut first_bad = None;
    for m in 1..=max {
        let oracle = is_fibonacci(m).is_some();
        let expected = if oracle { Verdict::Accepted } else { Verdict::Rejected };
        accepted += u64::from(oracle);
        // an accepting run guessing k stores at most k(k+1)/2 + 1 entries
        let k = fibonacci_flag_cap(m);
        let limits = RunLimits::default().store_cap(k * (k + 1) / 2 + 1);
        let engine = run(&pda, &vec![a; m as usize], &limits).verdict;
        let exact = accepts_fibonacci_exact(m);
        engine_ok += u64::from(engine == expected);
        exact_ok += u64::from(exact == expected);
        if (engine != expected || exact != expected) && first_bad.is_none() {
            first_bad = Some(format!("m = {m}: engine {engine:?}, exact {exact:?}"));
        }
    }
    let elapsed = start.elapsed();
    let passed = engine_ok == max && exact_ok == max && elapsed < Duration::from_secs(10);
    let mut detail = format!(
        "engine {engine_ok}/{max}, exact {exact_ok}/{max} agree with the oracle, {accepted} accepted, {:.2}s of 10s",
        elapsed.as_secs_f64()
    );
    if let Some(bad) = first_bad {
        detail.push_str(&format!("; first mismatch {bad}"));
    }
    (passed, detail)
}

/// `(q0, a^{f(k)}, X2[F^k].ω) ⇒* (q0, ε, ω)` and
/// `(q0, a^{f(k+1)}, X1[F^k].ω) ⇒* (q0, ε, ω)`.
fn flag_countdown(cfg: &VerifyConfig) -> Outcome {
    let pda = fibonacci_automaton();
    let q0 = pda.state("q0").expect("state q0");
    let a = pda.letter("a").expect("letter a");
    let tails = [("ε", Store::empty()), ("X2[ε]", flagged(&pda, "X2", 0))];
    let mut counts = Vec::new();
    let mut failures = Vec::new();
    for (tail_name, tail) in &tails {
        let (mut ok, mut total) = (0, 0);
        for k in 0..=cfg.scale.countdown_max_k {
            for (top, len) in [("X2", k), ("X1", k + 1)] {
                let head = flagged(&pda, top, k);
                let (symbol, flag) = head.top().expect("flagged store is nonempty");
                let store = Store::cons(*symbol, flag.clone(), tail.clone());
                let input = vec![a; fib(len).expect("small index") as usize];
                let start = Configuration { state: q0, pos: 0, store };
                let goal = Goal::Exact { state: q0, store: tail.clone() };
                let verdict = run_from(&pda, &input, start, &goal, &RunLimits::default()).verdict;
                total += 1;
                if verdict == Verdict::Accepted {
                    ok += 1;
                } else {
                    failures.push(format!("{top}[F^{k}] over {tail_name}: {verdict:?}"));
                }
            }
        }
        counts.push(format!("{ok}/{total} over ω = {tail_name}"));
    }
    let mut detail = counts.join(", ");
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first failure {first}"));
    }
    (failures.is_empty(), detail)
}

fn contour_words(cfg: &VerifyConfig) -> Outcome {
    let cases = [(5, 5), (5, 7), (8, 8), (7, 9)];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut words, mut false_rejects, mut mutants, mut false_accepts) = (0, 0, 0, 0);
    let mut notes = Vec::new();
    for (p, s) in cases {
        let cp = ContourParams::new(p, s).expect("valid parameters");
        let g = Grammar::preset(Preset::Gp { p, sectors: s }).expect("valid parameters");
        let pda = contour_automaton(&cp);
        let (b, w) = (pda.letter("b").expect("letter b"), pda.letter("w").expect("letter w"));
        for n in 0..=cfg.scale.contour_max_n {
            let word = contour_letters(&pda, &contour_word(&g, n)).expect("contour words use b and w");
            let mut positions: Vec<usize> = (0..cfg.scale.mutations).map(|_| rng.gen_range(0..word.len())).collect();
            positions.sort_unstable();

            // one pass over the word; each mutant resumes from a snapshot
            // taken just before its flipped letter
            let mut r = Recognizer::new(&pda, exact_limits(n));
            let mut pending = positions.iter().peekable();
            for (i, &letter) in word.iter().enumerate() {
                while pending.next_if(|&&at| at == i).is_some() {
                    let mut m = r.clone();
                    m.feed(if letter == b { w } else { b });
                    for &rest in &word[i + 1..] {
                        if m.is_dead() {
                            break;
                        }
                        m.feed(rest);
                    }
                    mutants += 1;
                    if !m.is_dead() && m.verdict() != Verdict::Rejected {
                        false_accepts += 1;
                        notes.push(format!("({p},{s}) n = {n}: mutant at {i} {:?}", m.verdict()));
                    }
                }
                r.feed(letter);
            }
            words += 1;
            if r.verdict() != Verdict::Accepted {
                false_rejects += 1;
                notes.push(format!("({p},{s}) n = {n}: contour word {:?}", r.verdict()));
            }
        }
    }
    let mut detail = format!(
        "{} cases x radius 0..={}: {words} words ({false_rejects} false rejects), {mutants} mutants ({false_accepts} false accepts)",
        cases.len(),
        cfg.scale.contour_max_n
    );
    if let Some(first) = notes.first() {
        detail.push_str(&format!("; {first}"));
    }
    (false_rejects == 0 && false_accepts == 0, detail)
}

fn level_law(cfg: &VerifyConfig) -> Outcome {
    let g0 = Grammar::preset(Preset::G0).expect("G0");
    let mut bad = Vec::new();
    for n in 0..=cfg.scale.level_max_n {
        let white = expand_level(&g0, NodeColor::White, n).letters;
        let black = expand_level(&g0, NodeColor::Black, n).letters;
        let ok = white.len() as u128 == fib(2 * n + 1).expect("small index")
            && black.len() as u128 == fib(2 * n).expect("small index")
            && level_counts(&g0, n).ok() == Some(white.counts());
        if !ok {
            bad.push(n);
        }
    }
    let max = cfg.scale.level_max_n;
    let last = fib(2 * max + 1).expect("small index");
    let detail = if bad.is_empty() {
        format!("n = 0..={max} exact, |W level {max}| = {last}")
    } else {
        format!("mismatch at n = {bad:?}")
    };
    (bad.is_empty(), detail)
}

fn recurrence_bridge(cfg: &VerifyConfig) -> Outcome {
    let g0 = Grammar::preset(Preset::G0).expect("G0");
    let g2 = Grammar::preset(Preset::G2).expect("G2");
    let mut bad = Vec::new();
    let mut largest = 0;
    for family in [Family::Uw, Family::Xy] {
        let g = if family == Family::Uw { &g0 } else { &g2 };
        let mut current = RecurrencePair::initial(family);
        for n in 0..=cfg.scale.factor_max_n {
            if n <= cfg.scale.bridge_max_n {
                let white = expand_level(g, NodeColor::White, n).letters;
                let black = expand_level(g, NodeColor::Black, n).letters;
                if current.second != white || current.first != black {
                    bad.push(format!("{family:?} bridge n = {n}"));
                }
            }
            let next = current.next();
            largest = largest.max(next.second.len());
            let second_ok = match family {
                Family::Uw => current.second.is_suffix_of(&next.second),
                Family::Xy => current.second.is_suffix_of(&next.second) && current.second.is_prefix_of(&next.second),
            };
            if !second_ok || !current.first.is_prefix_of(&next.first) {
                bad.push(format!("{family:?} factor n = {n}"));
            }
            current = next;
        }
    }
    let detail = if bad.is_empty() {
        format!(
            "both families match G0/G2 for n <= {}, suffix/prefix laws hold for n <= {} (longest word {largest} letters)",
            cfg.scale.bridge_max_n, cfg.scale.factor_max_n
        )
    } else {
        format!("{} failures, first {}", bad.len(), bad[0])
    };
    (bad.is_empty(), detail)
}

fn variant_invariance(cfg: &VerifyConfig) -> Outcome {
    let g0 = Grammar::preset(Preset::G0).expect("G0");
    let (mut ok, mut total) = (0u64, 0u64);
    let mut distinct = std::collections::HashSet::new();
    for seed in 0..cfg.scale.variant_seeds {
        for n in 0..=cfg.scale.variant_max_n {
            let level = sample_variant_level(cfg.seed.wrapping_mul(1_000_003).wrapping_add(seed), n);
            total += 1;
            let len_ok = level.letters.len() as u128 == fib(2 * n + 1).expect("small index");
            if len_ok && level_counts(&g0, n).ok() == Some(level.letters.counts()) {
                ok += 1;
            }
            if n == cfg.scale.variant_max_n {
                distinct.insert(level.letters);
            }
        }
    }
    let detail = format!(
        "{ok}/{total} samples match length and counts ({} distinct words at n = {})",
        distinct.len(),
        cfg.scale.variant_max_n
    );
    (ok == total, detail)
}

fn zeckendorf_codes(cfg: &VerifyConfig) -> Outcome {
    let mut round_trip = 0u64;
    let mut clean = true;
    for m in 1..=cfg.scale.zeck_round_trip {
        let Ok(code) = encode(m) else { continue };
        let text = code.to_string();
        clean &= !text.contains("11") && text.starts_with('1');
        round_trip += u64::from(decode(&text) == Ok(m));
    }

    // every code without adjacent 1s, enumerated by length, hits each
    // m <= limit exactly once
    let limit = cfg.scale.zeck_unique;
    let mut hits = vec![0u32; limit as usize + 1];
    let mut frontier = vec![vec![true]];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for bits in frontier {
            let Ok(code) = ZeckendorfCode::from_bits(bits.clone()) else { continue };
            let Ok(value) = code.value() else { continue };
            if value > limit {
                // every longer code is larger still
                continue;
            }
            hits[value as usize] += 1;
            let mut zero = bits.clone();
            zero.push(false);
            next.push(zero);
            if bits.last() == Some(&false) {
                let mut one = bits;
                one.push(true);
                next.push(one);
            }
        }
        frontier = next;
    }
    let unique = hits[1..].iter().all(|&h| h == 1);
    let passed = round_trip == cfg.scale.zeck_round_trip && clean && unique;
    let detail = format!(
        "round trip {round_trip}/{}, no code contains 11: {clean}, unique representation up to {limit}: {unique}",
        cfg.scale.zeck_round_trip
    );
    (passed, detail)
}

fn growth_ratio() -> Outcome {
    let phi_squared = (3.0 + 5f64.sqrt()) / 2.0;
    match growth_evidence(15) {
        Ok(g) => {
            let gap = (g.ratio - phi_squared).abs();
            (
                gap < 1e-3,
                format!("|w16|/|w15| = {}/{} = {:.9}, off φ² by {gap:.2e}", g.numerator, g.denominator, g.ratio),
            )
        }
        Err(e) => (false, e.to_string()),
    }
}

fn disc_geometry(cfg: &VerifyConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9);
    let point = |rng: &mut ChaCha8Rng| {
        let (r, t): (f64, f64) = (rng.gen_range(0.0..0.95), rng.gen_range(0.0..std::f64::consts::TAU));
        DiscPoint::new(r * t.cos(), r * t.sin()).expect("radius below 1")
    };
    let mut worst = 0f64;
    let mut involutions = 0;
    for _ in 0..cfg.scale.reflections {
        let (a, b, z) = (point(&mut rng), point(&mut rng), point(&mut rng));
        if a.distance(b) < 1e-6 {
            continue;
        }
        let back = reflect((a, b), z).and_then(|once| reflect((a, b), once));
        let err = back.map_or(f64::INFINITY, |p| p.distance(z));
        worst = worst.max(err);
        involutions += 1;
    }
    let involution_ok = involutions == cfg.scale.reflections && worst < 1e-9;

    let mut counts_ok = true;
    let mut count_notes = Vec::new();
    for (p, q, sectors) in [(5, 4, 5u128), (7, 3, 7)] {
        match generate_tiles(p, q, cfg.scale.tile_radius) {
            Ok(tiling) => {
                let counts: Vec<usize> = (0..=cfg.scale.tile_radius).map(|r| tiling.count_within(r)).collect();
                let expected: Vec<usize> = (0..=cfg.scale.tile_radius)
                    .map(|r| (1 + sectors * (0..r).map(|k| fib(2 * k + 1).expect("small index")).sum::<u128>()) as usize)
                    .collect();
                counts_ok &= counts == expected;
                count_notes.push(format!("{{{p},{q}}} {counts:?}"));
            }
            Err(e) => {
                counts_ok = false;
                count_notes.push(format!("{{{p},{q}}} {e}"));
            }
        }
    }

    let render_start = Instant::now();
    let mut xml_ok = true;
    for (p, q) in [(5, 4), (7, 3)] {
        let Ok(tiling) = generate_tiles(p, q, cfg.scale.render_depth) else {
            xml_ok = false;
            continue;
        };
        let options = SvgOptions { highlight: Some(cfg.scale.render_depth), ..SvgOptions::default() };
        let svg = to_svg(tiling.tiles(), &options);
        xml_ok &= match roxmltree::Document::parse(&svg) {
            Ok(doc) => doc.descendants().filter(|n| n.has_tag_name("path")).count() == tiling.len(),
            Err(_) => false,
        };
    }
    let render = render_start.elapsed();
    let render_ok = render < Duration::from_secs(5);

    let passed = involution_ok && counts_ok && xml_ok && render_ok;
    let detail = format!(
        "{involutions} reflections, worst round trip {worst:.1e}; ball sizes {}; SVG well-formed: {xml_ok}; depth-{} renders in {:.2}s of 5s",
        count_notes.join(", "),
        cfg.scale.render_depth,
        render.as_secs_f64()
    );
    (passed, detail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_check() {
        assert!(check(0, &VerifyConfig::default()).is_none());
        assert!(check(10, &VerifyConfig::default()).is_none());
    }

    #[test]
    fn report_line() {
        let r = CheckReport {
            id: 8,
            title: "growth ratio",
            passed: true,
            detail: "fine".into(),
            elapsed: Duration::from_millis(1500),
        };
        assert_eq!(r.to_string(), "[PASS] 8. growth ratio: fine (1.50s)");
    }

    #[test]
    fn quick_growth_and_zeckendorf() {
        let cfg = VerifyConfig { scale: Scale::quick(), seed: 1 };
        assert!(check(7, &cfg).unwrap().passed);
        assert!(check(8, &cfg).unwrap().passed);
    }
}
