use itpda_core::disc::{generate_tiles, reflect, to_svg, DiscPoint, SvgOptions, DEDUP_TOLERANCE};
use itpda_core::fibonacci::fib;
use itpda_core::grammar::{contour_colors, Grammar, Preset};
use itpda_core::word::ColorWord;
use proptest::prelude::*;

fn is_rotation(a: &ColorWord, b: &ColorWord) -> bool {
    let (a, b) = (a.to_string(), b.to_string());
    a.len() == b.len() && format!("{a}{a}").contains(&b)
}

fn point() -> impl Strategy<Value = DiscPoint> {
    (0.0f64..0.9, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| DiscPoint::new(r * t.cos(), r * t.sin()).unwrap())
}

proptest! {
    #[test]
    fn reflection_is_an_involution(a in point(), b in point(), z in point()) {
        prop_assume!(a.distance(b) > 1e-3);
        let once = reflect((a, b), z).unwrap();
        let twice = reflect((a, b), once).unwrap();
        prop_assert!(twice.distance(z) < 1e-9);
        // the edge endpoints are fixed
        prop_assert!(reflect((a, b), a).unwrap().distance(a) < 1e-9);
        prop_assert!(reflect((a, b), b).unwrap().distance(b) < 1e-9);
    }
}

#[test]
fn ball_sizes_follow_the_level_law() {
    for (p, q, sectors) in [(5, 4, 5u128), (7, 3, 7)] {
        let tiling = generate_tiles(p, q, 4).unwrap();
        for r in 0..=4 {
            let expected = 1 + sectors * (0..r).map(|k| fib(2 * k + 1).unwrap()).sum::<u128>();
            assert_eq!(tiling.count_within(r) as u128, expected, "{{{p},{q}}} r = {r}");
        }
    }
}

#[test]
fn tiles_are_well_separated_and_inside() {
    for (p, q) in [(5, 4), (7, 3), (8, 4)] {
        let tiling = generate_tiles(p, q, 3).unwrap();
        let tiles = tiling.tiles();
        for (i, t) in tiles.iter().enumerate() {
            assert_eq!(t.vertices.len(), p);
            assert_eq!(t.distance == 0, i == 0);
            assert!(t.vertices.iter().all(|v| v.norm() < 1.0));
            for u in &tiles[..i] {
                assert!(t.center.distance(u.center) > 10.0 * DEDUP_TOLERANCE);
            }
        }
    }
}

#[test]
fn border_rings_read_contour_words() {
    let cases = [(5, 4, Preset::G0), (7, 3, Preset::Gp { p: 5, sectors: 7 })];
    for (p, q, preset) in cases {
        let g = Grammar::preset(preset).unwrap();
        let tiling = generate_tiles(p, q, 4).unwrap();
        for r in 1..=4 {
            let ring = tiling.border_colors(r);
            assert!(is_rotation(&ring, &contour_colors(&g, r - 1)), "{{{p},{q}}} r = {r}: {ring}");
        }
    }
}

#[test]
fn svg_is_well_formed() {
    let tiling = generate_tiles(5, 4, 2).unwrap();
    let options = SvgOptions { highlight: Some(1), ..SvgOptions::default() };
    let svg = to_svg(tiling.tiles(), &options);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let paths: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("path")).collect();
    assert_eq!(paths.len(), 21);
    let highlighted = paths.iter().filter(|n| n.attribute("fill") == Some(options.highlight_fill.as_str())).count();
    assert_eq!(highlighted, 5);
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), 1);
    assert_eq!(doc.root_element().attribute("viewBox"), Some("-1.05 -1.05 2.1 2.1"));
}
