use itpda_core::automata::{
    accepts_contour_exact, accepts_fibonacci_exact, contour_automaton, contour_letters, exact_limits, is_fibonacci,
    ContourParams,
};
use itpda_core::grammar::{contour_word, Grammar, Preset};
use itpda_core::pda::{run, RunLimits, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn flip(word: &str, at: usize) -> String {
    word.char_indices()
        .map(|(i, c)| if i == at { if c == 'b' { 'w' } else { 'b' } } else { c })
        .collect()
}

#[test]
fn decider_examples() {
    assert_eq!(accepts_fibonacci_exact(8), Verdict::Accepted);
    assert_eq!(accepts_fibonacci_exact(0), Verdict::Rejected);
    assert_eq!(accepts_fibonacci_exact(4), Verdict::Rejected);
    assert_eq!(is_fibonacci(1), Some(0));
    assert!(is_fibonacci(21).is_some());
    assert_eq!(is_fibonacci(4), None);

    let penta = ContourParams::pentagrid();
    let hepta = ContourParams::heptagrid();
    assert_eq!(accepts_contour_exact(&penta, &"bww".repeat(5)), Verdict::Accepted);
    assert_eq!(accepts_contour_exact(&hepta, "bwwbww"), Verdict::Rejected);
    assert_eq!(accepts_contour_exact(&hepta, &"w".repeat(7)), Verdict::Accepted);
    assert_eq!(accepts_contour_exact(&hepta, &"bww".repeat(7)), Verdict::Accepted);
    assert_eq!(accepts_contour_exact(&hepta, ""), Verdict::Rejected);

    let level2 = contour_word(&Grammar::preset(Preset::G0).unwrap(), 2);
    assert_eq!(accepts_contour_exact(&penta, &level2), Verdict::Accepted);
    assert_eq!(accepts_contour_exact(&penta, &flip(&level2, 17)), Verdict::Rejected);
}

#[test]
fn plain_search_agrees_on_small_words() {
    let hepta = ContourParams::heptagrid();
    let pda = contour_automaton(&hepta);
    let accepted = "bww".repeat(7);
    let letters = contour_letters(&pda, &accepted).unwrap();
    assert_eq!(run(&pda, &letters, &RunLimits::with_fuel(100_000)).verdict, Verdict::Accepted);
    let letters = contour_letters(&pda, &"w".repeat(7)).unwrap();
    assert_eq!(run(&pda, &letters, &RunLimits::with_fuel(100_000)).verdict, Verdict::Accepted);
}

/// Every word of a contour length that the automaton accepts is the
/// canonical contour word: exhaustive for the shortest lengths, sampled by
/// mutation above.
#[test]
fn accepted_words_are_contour_words() {
    for (p, s) in [(5, 5), (5, 7), (6, 6)] {
        let cp = ContourParams::new(p, s).unwrap();
        let g = Grammar::preset(Preset::Gp { p, sectors: s }).unwrap();
        let pda = contour_automaton(&cp);
        let canonical = contour_word(&g, 1);
        let len = canonical.len();
        if len <= 18 {
            for bits in 0u32..(1 << len) {
                let w: String = (0..len).map(|i| if bits >> i & 1 == 1 { 'b' } else { 'w' }).collect();
                let letters = contour_letters(&pda, &w).unwrap();
                let verdict = itpda_core::pda::Recognizer::new(&pda, exact_limits(1)).decide(&letters);
                assert_eq!(verdict == Verdict::Accepted, w == canonical, "({p},{s}) {w}");
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(p as u64 * 100 + s as u64);
        for n in 0..=6 {
            let word = contour_word(&g, n);
            assert_eq!(accepts_contour_exact(&cp, &word), Verdict::Accepted);
            for _ in 0..20 {
                let mutated = flip(&word, rng.gen_range(0..word.len()));
                assert_eq!(accepts_contour_exact(&cp, &mutated), Verdict::Rejected);
            }
            // dropping or adding a letter leaves the contour lengths
            assert_eq!(accepts_contour_exact(&cp, &word[1..]), Verdict::Rejected);
            assert_eq!(accepts_contour_exact(&cp, &format!("{word}w")), Verdict::Rejected);
        }
    }
}

#[test]
fn tiling_parameters() {
    assert_eq!(ContourParams::for_tiling(5, 4).unwrap(), ContourParams::pentagrid());
    assert_eq!(ContourParams::for_tiling(7, 3).unwrap(), ContourParams::heptagrid());
    assert_eq!(ContourParams::for_tiling(9, 3).unwrap(), ContourParams::new(7, 9).unwrap());
    assert!(ContourParams::for_tiling(5, 3).is_err());
    assert!(ContourParams::for_tiling(5, 5).is_err());
}
