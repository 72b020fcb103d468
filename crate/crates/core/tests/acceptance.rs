//! Acceptance suite: ten end-to-end checks, one test per criterion, each
//! asserting its own runtime budget.  Run with --nocapture to see the
//! per-criterion summaries.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use splitspan::config::fixtures::{hexagon_with_center, rats, square_with_center};
use splitspan::config::{Cell, PointConfiguration, Subdivision, Weight};
use splitspan::gale::{pc_to_polytope_tightspan, polytope_as_tightspan, polytope_with_same_secondary};
use splitspan::hypersimplex::{
    bases_by_intersection_bounds, cell_bound_chain, count_three_splits, enumerate_three_splits,
    hypersimplex_two_splits, is_matroid_family, is_matroid_subdivision, three_split_cell_family,
    three_split_cells, Hypersimplex,
};
use splitspan::kernel::{dot, rat, rat_int, Int, Rat};
use splitspan::ksplit::{
    classify_tight_span, detect_k_split, enumerate_coarsest, is_regular, ksplit_weight,
    necessary_shape_filter, ShapeKind,
};
use splitspan::polyhedron::faces::{incidence_isomorphic, vertex_facet_isomorphic, Polyhedron};
use splitspan::polyhedron::{htov, VPolyhedron};
use splitspan::secondary::{
    canonical_facets, canonical_normal, is_totally_k_splittable, secondary_polytope,
    split_polyhedron, SecondaryPolytope,
};
use splitspan::splits::{is_split_prime, split_decomposition, two_splits};
use splitspan::Guards;

fn cell(is: &[usize]) -> Cell {
    is.iter().map(|&i| i - 1).collect()
}

fn sub(cells: &[&[usize]]) -> Subdivision {
    Subdivision::new(cells.iter().map(|c| cell(c)).collect())
}

fn big() -> Guards {
    Guards { max_points: 200, max_dim: 10 }
}

/// 24 seeded configurations covering every (dim, size) pair with
/// 1 <= dim <= 3 and dim + 2 <= n <= 7, plus two fixed fans: a tetrahedron
/// and a triangular prism with an interior point, whose coarsest
/// subdivisions reach k = 4 and k = 5.  Duplicates and interior points are
/// welcome in the random part, only full-dimensionality is retried.
fn corpus() -> Vec<PointConfiguration> {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let mut out = Vec::new();
    for d in 1..=3usize {
        let top = if d == 3 { 3 } else { 4 };
        for n in (d + 2)..=7 {
            let mut found = 0;
            while found < 2 {
                let pts: Vec<Vec<Rat>> = (0..n)
                    .map(|_| (0..d).map(|_| rat_int(rng.gen_range(0..=top))).collect())
                    .collect();
                if let Ok(a) = PointConfiguration::new(pts) {
                    out.push(a);
                    found += 1;
                }
            }
        }
    }
    out.push(PointConfiguration::from_i64(&[
        &[0, 0, 0],
        &[4, 0, 0],
        &[0, 4, 0],
        &[0, 0, 4],
        &[1, 1, 1],
    ]));
    out.push(PointConfiguration::from_i64(&[
        &[0, 0, 0],
        &[4, 0, 0],
        &[0, 4, 0],
        &[0, 0, 4],
        &[4, 0, 4],
        &[0, 4, 4],
        &[1, 1, 2],
    ]));
    out
}

fn cube3() -> PointConfiguration {
    let mut pts = Vec::new();
    for x in 0..2i64 {
        for y in 0..2i64 {
            for z in 0..2i64 {
                pts.push(vec![rat_int(x), rat_int(y), rat_int(z)]);
            }
        }
    }
    PointConfiguration::new(pts).unwrap()
}

/// The hull of a tight span, read in the envelope chart with the leading
/// coordinate dropped.
fn tight_span_polytope(a: &PointConfiguration, w: &Weight) -> Polyhedron {
    let t = a.tight_span(w);
    let pts: Vec<Vec<Rat>> = t.vertices().iter().map(|v| v[1..].to_vec()).collect();
    Polyhedron::from_points(&pts)
}

fn facet_vertex_sets(sec: &SecondaryPolytope) -> Vec<BTreeSet<usize>> {
    sec.facets
        .iter()
        .map(|(c, b, _)| {
            (0..sec.vertices.len())
                .filter(|&i| dot(c, &sec.vertices[i].coordinates) == *b)
                .collect()
        })
        .collect()
}

#[test]
fn a01_square_with_center_golden_vectors() {
    let started = Instant::now();
    let a = square_with_center();
    let w1 = rats(&[1, 0, 0, 0, 0]);
    let w1bar = rats(&[1, 0, 0, 0, 1]);
    let w2 = rats(&[0, 0, 1, 0, 0]);
    let w2bar = rats(&[0, 0, 1, 0, 1]);

    let env = htov(&a.envelope(&w1));
    let mut vertices = env.vertices.clone();
    vertices.sort();
    let mut expected_vertices = vec![
        rats(&[0, 0, 0]),
        vec![rat_int(-1), rat(1, 2), rat(1, 2)],
    ];
    expected_vertices.sort();
    assert_eq!(vertices, expected_vertices);

    let rays: BTreeSet<Vec<Int>> = env.rays.iter().cloned().collect();
    let expected_rays: BTreeSet<Vec<Int>> = [
        [2i64, -1, 0],
        [2, 0, -1],
        [0, 0, 1],
        [0, 1, 0],
    ]
    .iter()
    .map(|r| r.iter().map(|&x| Int::from(x)).collect())
    .collect();
    assert_eq!(rays, expected_rays, "rays are primitive, so scaling is fixed");

    assert_eq!(
        a.tight_span(&w1).geometric_faces(),
        a.tight_span(&w1bar).geometric_faces()
    );
    assert_eq!(
        a.tight_span(&w2).geometric_faces(),
        a.tight_span(&w2bar).geometric_faces()
    );

    assert!(a.coherence_check(&w1, &w2));
    assert!(!a.coherence_check(&w1bar, &w2bar));

    let elapsed = started.elapsed();
    println!("acceptance 1: square-with-center goldens in {elapsed:?}");
    assert!(elapsed < Duration::from_secs(1));
}

#[test]
fn a02_hexagon_golden_vectors() {
    let started = Instant::now();
    let a = hexagon_with_center();
    let w = rats(&[0, 0, 1, 1, 0, 0, 0]);
    let wbar = rats(&[0, 0, 1, 1, 0, 0, 1]);

    let s = a.regular_subdivision(&w);
    assert_eq!(s, sub(&[&[1, 2, 5, 6, 7], &[2, 3, 4, 5, 7]]));
    let sbar = a.regular_subdivision(&wbar);
    assert_eq!(sbar, sub(&[&[1, 2, 5, 6], &[2, 3, 4, 5]]));

    let segment: BTreeSet<Vec<Rat>> =
        [rats(&[0, 0, 0]), rats(&[1, -1, 0])].into_iter().collect();
    for weight in [&w, &wbar] {
        let t = a.tight_span(weight);
        assert_eq!(t.f_vector(), vec![2, 1]);
        let vs: BTreeSet<Vec<Rat>> = t.vertices().into_iter().collect();
        assert_eq!(vs, segment);
    }

    assert!(a.is_refinement(&sbar, &s));
    assert_ne!(sbar, s, "the refinement is strict");

    let elapsed = started.elapsed();
    println!("acceptance 2: hexagon goldens in {elapsed:?}");
    assert!(elapsed < Duration::from_secs(1));
}

#[test]
fn a03_cube_splits_and_secondary_polytope() {
    let started = Instant::now();
    let cube = cube3();
    let guards = Guards::default();

    assert_eq!(two_splits(&cube).len(), 14);

    let coarsest = enumerate_coarsest(&cube, &guards).unwrap();
    let mut three_split_count = 0;
    let mut two_split_count = 0;
    for s in &coarsest {
        let ks = detect_k_split(&cube, s).expect("every coarsest cube subdivision is a k-split");
        assert_eq!(ks.k, s.k());
        match s.k() {
            2 => two_split_count += 1,
            3 => three_split_count += 1,
            other => panic!("unexpected coarsest {other}-subdivision of the cube"),
        }
    }
    assert_eq!(two_split_count, 14);
    assert_eq!(three_split_count, 8);
    assert_eq!(coarsest.len(), 22);

    let sec = secondary_polytope(&cube, &guards).unwrap();
    assert_eq!(sec.vertices.len(), 74);
    assert_eq!(sec.facets.len(), 22);

    assert!(!is_totally_k_splittable(&cube, 2, &guards).unwrap());
    assert!(is_totally_k_splittable(&cube, 3, &guards).unwrap());

    let sp = split_polyhedron(&cube, 3, &sec).unwrap();
    let sp_normals: BTreeSet<Vec<Int>> = sp
        .inequalities
        .iter()
        .map(|(c, _)| canonical_normal(&cube, c).unwrap())
        .collect();
    assert_eq!(sp_normals, canonical_facets(&cube, &sec));

    let elapsed = started.elapsed();
    println!(
        "acceptance 3: cube has 14 2-splits, 8 3-splits, Sec 74/22, totally 3-splittable; {elapsed:?}"
    );
    assert!(elapsed < Duration::from_secs(600));
}

#[test]
fn a04_three_subdivisions_are_regular_three_splits() {
    let started = Instant::now();
    let guards = Guards::default();
    let mut seen = 0usize;
    for a in corpus() {
        for s in enumerate_coarsest(&a, &guards).unwrap() {
            if s.k() != 3 {
                continue;
            }
            seen += 1;
            let ks = detect_k_split(&a, &s)
                .expect("every coarsest 3-subdivision in the corpus is a 3-split");
            assert_eq!(ks.k, 3);
            assert!(is_regular(&a, &s).is_some(), "3-subdivisions are regular");
        }
    }
    assert!(seen > 0, "the corpus exercises 3-subdivisions");

    // A pinwheel of four cells around a rotated inner triangle: a valid
    // subdivision that no weight induces.
    let a = PointConfiguration::new(vec![
        rats(&[0, 0]),
        rats(&[6, 0]),
        rats(&[0, 6]),
        vec![rat(3, 2), rat_int(1)],
        vec![rat(7, 2), rat(3, 2)],
        vec![rat_int(1), rat(7, 2)],
    ])
    .unwrap();
    let s = sub(&[&[4, 5, 6], &[1, 2, 4, 5], &[2, 3, 5, 6], &[1, 3, 4, 6]]);
    a.validate_subdivision(&s.maximal_faces).unwrap();
    assert!(is_regular(&a, &s).is_none());

    let elapsed = started.elapsed();
    println!("acceptance 4: {seen} coarsest 3-subdivisions, all regular 3-splits; non-regular pinwheel rejected; {elapsed:?}");
    assert!(elapsed < Duration::from_secs(300));
}

#[test]
fn a05_ksplit_weights_reproduce_their_subdivisions() {
    let started = Instant::now();
    let guards = Guards::default();
    let mut corpus_ksplits = 0usize;
    for a in corpus() {
        for s in enumerate_coarsest(&a, &guards).unwrap() {
            let Some(ks) = detect_k_split(&a, &s) else { continue };
            corpus_ksplits += 1;
            let w = ksplit_weight(&a, &ks).unwrap();
            assert_eq!(a.regular_subdivision(&w), s);
        }
    }
    assert!(corpus_ksplits > 0);

    let mut hyper_splits = 0usize;
    for (k, n) in [(3, 6), (3, 7), (4, 7)] {
        let h = Hypersimplex::new(k, n).unwrap();
        let a = h.config(&big()).unwrap();
        for t in enumerate_three_splits(&h, &big()).unwrap() {
            hyper_splits += 1;
            let s = three_split_cells(&h, &t).unwrap();
            let ks = detect_k_split(&a, &s).expect("tripartition splits are 3-splits");
            assert_eq!(ks.k, 3);
            let w = ksplit_weight(&a, &ks).unwrap();
            assert_eq!(a.regular_subdivision(&w), s);
        }
    }
    assert_eq!(hyper_splits, 30 + 210 + 210);

    let elapsed = started.elapsed();
    println!("acceptance 5: {corpus_ksplits} corpus k-splits and {hyper_splits} hypersimplex 3-splits reproduced from their weights; {elapsed:?}");
    assert!(elapsed < Duration::from_secs(600));
}

#[test]
fn a06_tight_span_shape_lemmas() {
    let started = Instant::now();
    let guards = Guards::default();
    let (mut four, mut five) = (0usize, 0usize);
    for a in corpus() {
        for s in enumerate_coarsest(&a, &guards).unwrap() {
            let shape = classify_tight_span(&a, &s);
            assert!(
                necessary_shape_filter(&shape, s.k()),
                "coarsest subdivision fails the shape filter: {shape:?}"
            );
            if s.k() == 4 {
                four += 1;
                assert!(
                    matches!(
                        shape.kind,
                        ShapeKind::Simplex | ShapeKind::GluedTriangles | ShapeKind::TriangleFan
                    ),
                    "coarsest 4-subdivision with shape {shape:?}"
                );
            }
            if s.k() == 5 {
                five += 1;
                let quad_plus_triangle = shape.maximal_faces.len() == 2 && {
                    let (x, dx) = &shape.maximal_faces[0];
                    let (y, dy) = &shape.maximal_faces[1];
                    *dx == 2
                        && *dy == 2
                        && x.len().min(y.len()) == 3
                        && x.len().max(y.len()) == 4
                        && x.intersection(y).count() == 2
                };
                assert!(!quad_plus_triangle);
            }
        }
    }
    assert!(four > 0, "the corpus exercises coarsest 4-subdivisions");
    assert!(five > 0, "the corpus exercises coarsest 5-subdivisions");

    let elapsed = started.elapsed();
    println!("acceptance 6: shape lemmas over the corpus ({four} 4-subdivisions, {five} 5-subdivisions); {elapsed:?}");
    assert!(elapsed < Duration::from_secs(600));
}

#[test]
fn a07_split_decompositions_of_random_weights() {
    let started = Instant::now();
    let configs = vec![
        square_with_center(),
        PointConfiguration::from_i64(&[&[0, 0], &[2, 0], &[3, 2], &[1, 3]]),
        PointConfiguration::from_i64(&[&[0, 0], &[2, 0], &[3, 2], &[1, 4], &[-1, 2]]),
        PointConfiguration::from_i64(&[&[0, 0], &[1, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 1]]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for a in &configs {
        for _ in 0..100 {
            let w: Weight = (0..a.n())
                .map(|_| {
                    Rat::new(
                        Int::from(rng.gen_range(-9..=9i64)),
                        Int::from(rng.gen_range(1..=3i64)),
                    )
                })
                .collect();
            let dec = split_decomposition(a, &w);
            for (_, lam) in &dec.lambda_one {
                assert!(lam > &Rat::from_integer(0.into()));
            }
            for (_, lam) in &dec.lambda_two {
                assert!(lam > &Rat::from_integer(0.into()));
            }
            assert_eq!(dec.reconstruct(a), w);
            // Coherence along the extraction chain: each summand's envelope
            // adds to the running rest.
            let mut running = dec.residual.clone();
            for t in dec.terms(a) {
                assert!(a.coherence_check(&running, &t));
                for (r, ti) in running.iter_mut().zip(&t) {
                    *r += ti;
                }
            }
            assert_eq!(running, w);
            assert!(is_split_prime(a, &dec.residual));
        }
    }

    let elapsed = started.elapsed();
    println!("acceptance 7: 100 random weights on each of 4 configurations decompose coherently; {elapsed:?}");
    assert!(elapsed < Duration::from_secs(300));
}

#[test]
fn a08_hypersimplex_split_counts() {
    let started = Instant::now();
    let guards = Guards::default();

    let d24 = Hypersimplex::new(2, 4).unwrap();
    assert_eq!(hypersimplex_two_splits(&d24, &guards).unwrap().len(), 3);
    let d25 = Hypersimplex::new(2, 5).unwrap();
    assert_eq!(hypersimplex_two_splits(&d25, &guards).unwrap().len(), 10);

    let d37 = Hypersimplex::new(3, 7).unwrap();
    let enumerated = enumerate_three_splits(&d37, &big()).unwrap();
    let unoriented: BTreeSet<_> =
        enumerated.iter().map(|t| (t.parts, t.mus)).collect();
    assert_eq!(count_three_splits(3, 7), 210);
    assert_eq!(2 * unoriented.len() as u64, 210);
    assert_eq!(enumerated.len() as u64, 210);

    let d36 = Hypersimplex::new(3, 6).unwrap();
    let a36 = d36.config(&big()).unwrap();
    let splits36 = enumerate_three_splits(&d36, &big()).unwrap();
    assert_eq!(count_three_splits(3, 6), 30);
    assert_eq!(splits36.len(), 30);
    for t in &splits36 {
        let s = three_split_cells(&d36, t).unwrap();
        a36.validate_subdivision(&s.maximal_faces).unwrap();
        assert!(splitspan::ksplit::is_coarsest(&a36, &s).unwrap());
        assert!(is_matroid_subdivision(&d36, &s));
    }

    // Verdict on the "no 3-splits for n <= 6" aside: it contradicts the
    // construction it annotates.  The hypersimplex on six elements has 30
    // certified 3-splits, so the bound should read n <= 5; 3-splits first
    // appear at n = 6, consistent with the "n >= 6" half of the same aside.
    println!(
        "acceptance 8: counts 3/10/210 confirmed; the six-element hypersimplex has {} certified 3-splits, so the claim that none exist for n <= 6 is off by one (correct bound: n <= 5)",
        splits36.len()
    );

    let elapsed = started.elapsed();
    println!("acceptance 8: finished in {elapsed:?}");
    assert!(elapsed < Duration::from_secs(300));
}

#[test]
fn a09_three_split_cells_are_matroids() {
    let started = Instant::now();
    let mut cells = 0usize;
    for (k, n) in [(3, 6), (3, 7), (4, 7), (4, 8)] {
        let h = Hypersimplex::new(k, n).unwrap();
        for t in enumerate_three_splits(&h, &big()).unwrap() {
            for m in 0..3 {
                cells += 1;
                let family = three_split_cell_family(&h, &t, m).unwrap();
                assert!(is_matroid_family(&family));
                let chain = cell_bound_chain(&t, m);
                let bounds = bases_by_intersection_bounds(n, k, &chain, &big()).unwrap();
                assert_eq!(family, bounds, "cell differs from its bound description");
            }
        }
    }
    assert_eq!(cells, 3 * (30 + 210 + 210 + 1540));

    let elapsed = started.elapsed();
    println!("acceptance 9: {cells} three-split cells are matroids matching their intersection bounds; {elapsed:?}");
    assert!(elapsed < Duration::from_secs(600));
}

#[test]
fn a10_gale_constructions() {
    let started = Instant::now();

    // n copies of one point re-materialize as the n-dimensional cross
    // polytope's vertex set.
    for n in 2..=4usize {
        let a = PointConfiguration::new(vec![vec![]; n]).unwrap();
        let out = polytope_with_same_secondary(&a);
        assert_eq!(out.n(), 2 * n);
        let hull = Polyhedron::from_points(out.points());
        assert_eq!(hull.v.vertices.len(), 2 * n);
        let mut cross: Vec<Vec<Rat>> = Vec::new();
        for i in 0..n {
            for sign in [1i64, -1] {
                let mut p = vec![rat_int(0); n];
                p[i] = rat_int(sign);
                cross.push(p);
            }
        }
        assert!(vertex_facet_isomorphic(&hull, &Polyhedron::from_points(&cross)));
    }

    // Duplicating the center of the square preserves the secondary
    // polytope's facet poset.
    let swc = square_with_center();
    let out = polytope_with_same_secondary(&swc);
    assert_eq!(out.n(), 6);
    let sec1 = secondary_polytope(&swc, &Guards::default()).unwrap();
    let sec2 = secondary_polytope(&out, &Guards { max_points: 24, max_dim: 6 }).unwrap();
    assert_eq!(sec1.dim, sec2.dim);
    assert!(incidence_isomorphic(
        sec1.vertices.len(),
        &facet_vertex_sets(&sec1),
        sec2.vertices.len(),
        &facet_vertex_sets(&sec2),
    ));

    // The doubled lift of the fan weight: ten vertices, four cells, each a
    // prism over a triangle.
    let fan = vec![rat(-1, 2), rat(-1, 2), rat(-1, 2), rat(-1, 2), rat_int(-1)];
    let (p, wp) = pc_to_polytope_tightspan(&swc, &fan);
    assert_eq!(p.n(), 10);
    assert_eq!(Polyhedron::from_points(p.points()).v.vertices.len(), 10);
    let s = p.regular_subdivision(&wp);
    assert_eq!(s.k(), 4);
    let prism = Polyhedron::from_points(
        &[
            [0i64, 0, 0],
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 0, 1],
            [0, 1, 1],
        ]
        .iter()
        .map(|p| p.iter().map(|&x| rat_int(x)).collect())
        .collect::<Vec<Vec<Rat>>>(),
    );
    for c in &s.maximal_faces {
        let pts: Vec<Vec<Rat>> = c.iter().map(|&i| p.point(i).to_vec()).collect();
        assert_eq!(pts.len(), 6);
        assert!(vertex_facet_isomorphic(&Polyhedron::from_points(&pts), &prism));
    }

    // Round trips: a polytope is the tight span of its own realization.
    let segment = VPolyhedron {
        dim: 1,
        vertices: vec![rats(&[0]), rats(&[2])],
        rays: vec![],
        lineality: vec![],
    };
    let square = VPolyhedron {
        dim: 2,
        vertices: vec![rats(&[0, 0]), rats(&[2, 0]), rats(&[0, 2]), rats(&[2, 2])],
        rays: vec![],
        lineality: vec![],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let random3 = loop {
        let pts: Vec<Vec<Rat>> = (0..8)
            .map(|_| (0..3).map(|_| rat_int(rng.gen_range(0..=6))).collect())
            .collect();
        let cand = VPolyhedron { dim: 3, vertices: pts, rays: vec![], lineality: vec![] };
        if polytope_as_tightspan(&cand).is_ok() {
            break cand;
        }
    };
    for input in [&segment, &square, &random3] {
        let (a, w) = polytope_as_tightspan(input).unwrap();
        let realized = tight_span_polytope(&a, &w);
        let original = Polyhedron::from_points(&input.vertices);
        assert!(vertex_facet_isomorphic(&realized, &original));
    }

    let elapsed = started.elapsed();
    println!("acceptance 10: cross polytopes, facet-poset isomorphism, prism lifts and tight-span round trips; {elapsed:?}");
    assert!(elapsed < Duration::from_secs(600));
}
