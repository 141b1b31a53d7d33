//! Property-level checks of the covering calculus on the periodic zigzag
//! cover and its mesh-quiver counterpart: push-down invariance under
//! translation, preservation of indecomposability, the pull-up/push-down
//! decomposition, classification round trips, line modules and fundamental
//! domains, and the hom-space identity of the orbit category itself.

use quivercover::covering::{CoveringContext, KindVerdict};
use quivercover::decomp::{decompose, indecomposables_isomorphic, is_indecomposable, is_isomorphic};
use quivercover::field::Field;
use quivercover::matrix::Matrix;
use quivercover::parse::{parse_fixture_with_field, Fixture};
use quivercover::periodic::PeriodicPresentation;
use quivercover::rep::Representation;
use quivercover::strings::{enumerate_strings, string_module};

const ZIGZAG: &str = "
field p=101
group rank 1
vertex 1
vertex 2
vertex 3
vertex 4
arrow a : 1 -> 2
arrow b : 1 -> 3
arrow d : 2 -> 4
arrow g : 3 -> 4 shift (1)
relation 1*a.d
relation 1*b.g
";

const MESH_COVER: &str = "
field p=101
group rank 1
vertex x1
vertex x2
vertex x3
vertex x4
vertex x5
vertex x6
vertex x7
vertex x8
vertex x9
vertex x10
arrow a5_1 : x5 -> x1
arrow a6_1 : x6 -> x1
arrow a10_2 : x10 -> x2
arrow a10_3 : x10 -> x3 shift (1)
arrow a9_5 : x9 -> x5
arrow a9_6 : x9 -> x6
arrow a4_7 : x4 -> x7
arrow a4_8 : x4 -> x8
arrow a2_9 : x2 -> x9
arrow a3_9 : x3 -> x9
arrow a7_10 : x7 -> x10
arrow a8_10 : x8 -> x10
relation 1*a2_9.a9_6
relation 1*a3_9.a9_5
relation -1*a4_7.a7_10 + 1*a4_8.a8_10
relation 1*a7_10.a10_3
relation 1*a8_10.a10_2
relation -1*a9_5.a5_1 + 1*a9_6.a6_1
";

fn cover(text: &str) -> PeriodicPresentation {
    let parsed = parse_fixture_with_field(text, Some(Field::prime(101).unwrap())).unwrap();
    let Fixture::Cover(c) = parsed.fixture else { panic!("cover expected") };
    c
}

fn interior_mods(
    ctx: &CoveringContext,
    radius: i64,
) -> (std::sync::Arc<quivercover::periodic::WindowCategory>, Vec<Representation>) {
    let win = ctx.window(radius).unwrap();
    let e = enumerate_strings(win.presentation(), 0).unwrap();
    let mods = e
        .strings
        .iter()
        .map(|w| string_module(win.presentation(), w).unwrap())
        .filter(|m| win.is_interior(m))
        .collect();
    (win, mods)
}

#[test]
fn push_down_is_translation_invariant_and_preserves_indecomposables() {
    let ctx = CoveringContext::new(cover(ZIGZAG), 32).unwrap();
    let (win, mods) = interior_mods(&ctx, 3);
    assert!(!mods.is_empty());
    for m in &mods {
        let down = ctx.push_down(&win, m).unwrap();
        assert_eq!(down.total_dim(), m.total_dim());
        assert!(is_indecomposable(&down, 11).unwrap());
        for g in [[1i64], [-1i64]] {
            if let Ok(t) = win.translate(m, &g) {
                if win.is_interior(&t) {
                    let down_t = ctx.push_down(&win, &t).unwrap();
                    assert!(is_isomorphic(&down, &down_t, 11).unwrap());
                }
            }
        }
    }
}

#[test]
fn pull_up_of_push_down_is_the_sum_of_window_translates() {
    let ctx = CoveringContext::new(cover(ZIGZAG), 32).unwrap();
    let (win, mods) = interior_mods(&ctx, 2);
    for m in mods.iter().filter(|m| m.total_dim() >= 2).take(4) {
        let down = ctx.push_down(&win, m).unwrap();
        let (up, _) = ctx.pull_up_window(&down, 2).unwrap();
        let report = decompose(&up, 5).unwrap();
        // every summand must be a translate of m, possibly cut by the
        // boundary; the interior ones are exact translates
        let mut interior_translates = 0;
        for s in &report.summands {
            if win.is_interior(&s.rep) {
                let mut matched = false;
                for g in -4i64..=4 {
                    if let Ok(t) = win.translate(m, &[g]) {
                        if s.rep.dims() == t.dims() && indecomposables_isomorphic(&s.rep, &t).unwrap()
                        {
                            matched = true;
                            break;
                        }
                    }
                }
                assert!(matched, "interior summand is not a translate");
                interior_translates += s.multiplicity;
            }
        }
        assert!(interior_translates >= 1);
    }
}

#[test]
fn classification_round_trip_yields_a_translate() {
    let ctx = CoveringContext::new(cover(ZIGZAG), 32).unwrap();
    let (win, mods) = interior_mods(&ctx, 2);
    for m in mods.iter().take(6) {
        let down = ctx.push_down(&win, m).unwrap();
        match ctx.classify_module_kind(&down, 6, true, 3).unwrap() {
            KindVerdict::FirstKind { witness, radius } => {
                let wwin = ctx.window(radius).unwrap();
                let pushed = ctx.push_down(&wwin, &witness).unwrap();
                assert!(is_isomorphic(&pushed, &down, 3).unwrap());
            }
            other => panic!("expected first kind, got {}", other.kind_name()),
        }
    }
}

#[test]
fn orbit_category_hom_identity() {
    // dim A(Fx, Fy) equals the sum over lifts of the cover hom dimensions
    let c = cover(ZIGZAG);
    let ctx = CoveringContext::new(c, 32).unwrap();
    let orbit = ctx.orbit();
    let win = ctx.window(4).unwrap();
    let nv = ctx.periodic().slice().vertex_count();
    for x in 0..nv {
        for y in 0..nv {
            let downstairs = orbit.hom_dim(x, y).unwrap();
            // lifts: x at coordinate 0, y at every window coordinate
            let x0 = win.find_vertex(x, &[0]).unwrap();
            let mut upstairs = 0;
            for t in -4i64..=4 {
                if let Some(wy) = win.find_vertex(y, &[t]) {
                    upstairs += win.presentation().hom_dim(x0, wy).unwrap();
                }
            }
            assert_eq!(downstairs, upstairs, "pair ({x}, {y})");
        }
    }
}

#[test]
fn line_modules_are_thin_translation_invariant_and_fold_to_bands() {
    let ctx = CoveringContext::new(cover(MESH_COVER), 32).unwrap();
    let lines = ctx.periodic_lines(3).unwrap();
    assert_eq!(lines.len(), 1);
    let line = &lines[0];
    assert_eq!(line.vertices_per_period(), 4);
    let win = ctx.window(6).unwrap();
    let m1 = ctx.canonical_line_module(&win, line, 2).unwrap();
    // thin, and the relations vanish by construction of the walk
    assert!(m1.dims().iter().all(|&d| d <= 1));
    assert_eq!(m1.total_dim(), 2 * line.vertices_per_period() + 1);
    // disjoint truncations are isomorphic up to translation: rebuild at a
    // shifted start and compare dimension multisets
    let mut dims1: Vec<usize> = m1.dims().to_vec();
    dims1.sort_unstable();
    let m2 = win.translate(&m1, &line.period_shift).map(|t| {
        let mut d = t.dims().to_vec();
        d.sort_unstable();
        d
    });
    if let Ok(dims2) = m2 {
        assert_eq!(dims1, dims2);
    }
    // bands with distinct eigenvalue sets are pairwise non-isomorphic
    let f = Field::prime(101).unwrap();
    let bands: Vec<Representation> = [1i64, 2, 3]
        .iter()
        .map(|&l| ctx.band_from_line(line, &Matrix::from_i64(f, 1, 1, &[l])).unwrap())
        .collect();
    for b in &bands {
        assert!(is_indecomposable(b, 5).unwrap());
    }
    for i in 0..bands.len() {
        for j in 0..i {
            assert!(!indecomposables_isomorphic(&bands[i], &bands[j]).unwrap());
        }
    }
    // a Jordan block companion doubles the dimension and stays indecomposable
    let jordan = Matrix::from_i64(f, 2, 2, &[1, 1, 0, 1]);
    let bj = ctx.band_from_line(line, &jordan).unwrap();
    assert_eq!(bj.total_dim(), 8);
    assert!(is_indecomposable(&bj, 5).unwrap());
}

#[test]
fn band_window_restriction_is_one_spanning_interval() {
    let ctx = CoveringContext::new(cover(MESH_COVER), 32).unwrap();
    let line = ctx.periodic_lines(3).unwrap().remove(0);
    let f = Field::prime(101).unwrap();
    let band = ctx.band_from_line(&line, &Matrix::from_i64(f, 1, 1, &[1])).unwrap();
    let (up, truncated) = ctx.pull_up_window(&band, 3).unwrap();
    assert!(!truncated.is_empty(), "the pull-up of a band always meets the boundary");
    let report = decompose(&up, 9).unwrap();
    let win = ctx.window(3).unwrap();
    // the restriction of the infinite line is a single indecomposable
    // stretching from boundary to boundary; all other summands also touch
    // the boundary, so nothing interior survives
    for s in &report.summands {
        assert!(!win.is_interior(&s.rep), "a band pull-up cannot have interior summands");
    }
}

#[test]
fn classification_degrades_to_inconclusive_without_hypotheses() {
    // with the second-kind hypotheses not asserted, a band module cannot be
    // classified and the verdict must carry boundary evidence instead
    let ctx = CoveringContext::new(cover(MESH_COVER), 32).unwrap();
    let line = ctx.periodic_lines(3).unwrap().remove(0);
    let f = Field::prime(101).unwrap();
    let band = ctx.band_from_line(&line, &Matrix::from_i64(f, 1, 1, &[1])).unwrap();
    match ctx.classify_module_kind(&band, 4, false, 3).unwrap() {
        KindVerdict::Inconclusive { evidence, .. } => {
            assert!(!evidence.is_empty());
            assert!(evidence.iter().any(|(_, dims)| !dims.is_empty()));
        }
        other => panic!("expected inconclusive, got {}", other.kind_name()),
    }
}

#[test]
fn fundamental_domain_contains_translates_of_all_supports() {
    let ctx = CoveringContext::new(cover(ZIGZAG), 32).unwrap();
    let (win, mods) = interior_mods(&ctx, 2);
    let domain = ctx.fundamental_domain(&mods, &win).unwrap();
    assert!(!domain.is_empty());
    let dset: std::collections::HashSet<(usize, Vec<i64>)> = domain.into_iter().collect();
    for m in &mods {
        // normalised support must land inside the domain
        let sup: Vec<(usize, Vec<i64>)> = m
            .support()
            .into_iter()
            .map(|w| {
                let (o, t) = win.lift(w);
                (o, t.to_vec())
            })
            .collect();
        let min: i64 = sup.iter().map(|(_, t)| t[0]).min().unwrap();
        for (o, t) in sup {
            assert!(dset.contains(&(o, vec![t[0] - min])));
        }
    }
    // a single simple produces a single vertex
    let w0 = win.find_vertex(0, &[0]).unwrap();
    let s = quivercover::rep::simple_at(win.presentation(), w0).unwrap();
    let single = ctx.fundamental_domain(&[s], &win).unwrap();
    assert_eq!(single.len(), 1);
}

#[test]
fn push_down_folds_window_strings_to_orbit_strings() {
    // the push-down of an interior interval module is the string module of
    // the folded walk; compare against the independent enumeration over the
    // orbit algebra
    let ctx = CoveringContext::new(cover(ZIGZAG), 32).unwrap();
    let (win, mods) = interior_mods(&ctx, 2);
    let orbit_strings: Vec<Representation> = {
        let e = enumerate_strings(ctx.orbit(), 0).unwrap();
        e.strings
            .iter()
            .map(|w| string_module(ctx.orbit(), w).unwrap())
            .collect()
    };
    for m in &mods {
        let down = ctx.push_down(&win, m).unwrap();
        let matched = orbit_strings
            .iter()
            .filter(|s| s.dims() == down.dims())
            .any(|s| indecomposables_isomorphic(s, &down).unwrap());
        assert!(matched, "push-down of {:?} is not a folded string", m.dims());
    }
}

#[test]
fn boundary_contact_is_an_error_not_a_truncation() {
    let ctx = CoveringContext::new(cover(ZIGZAG), 32).unwrap();
    let win = ctx.window(2).unwrap();
    // a simple sitting on the boundary cannot be pushed down
    let boundary_vertex = *win.boundary().iter().min().unwrap();
    let s = quivercover::rep::simple_at(win.presentation(), boundary_vertex).unwrap();
    let err = ctx.push_down(&win, &s).unwrap_err();
    assert!(matches!(err, quivercover::error::Error::BoundaryContact(_)));
}

#[test]
fn locally_bounded_sums_stay_finite_on_windows() {
    let ctx = CoveringContext::new(cover(ZIGZAG), 32).unwrap();
    let win = ctx.window(3).unwrap();
    let pres = win.presentation();
    let n = pres.quiver().vertex_count();
    for x in 0..n {
        let outgoing: usize = (0..n).map(|y| pres.hom_dim(x, y).unwrap()).sum();
        let incoming: usize = (0..n).map(|y| pres.hom_dim(y, x).unwrap()).sum();
        assert!(outgoing >= 1 && outgoing <= 8);
        assert!(incoming >= 1 && incoming <= 8);
    }
}
