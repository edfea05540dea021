//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line with the measured values before asserting.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orthojulia::dynamics::{
    escape_radius, filled_julia_raster, filled_julia_raster_with, green_gap, is_connected, iterate_polynomial,
    locus::linspace, locus_scan, roots::polynomial_roots, GridSpec, JuliaApproximation, LocusFamily, RasterMode,
};
use orthojulia::experiments::main_with_args;
use orthojulia::geometry::{
    convergence_table, convex_hull, hausdorff, leja_capacity, raster_to_points, table::increases, LimitTarget,
    PointSet, SetKind,
};
use orthojulia::io::read_sequence_csv;
use orthojulia::measure::{
    interval_equilibrium_measure, max_entropy_measure, pushforward, unit_circle_measure, AffineMap, DiscreteMeasure,
};
use orthojulia::orthopoly::{chebyshev_closed_form, monic_sequence, nthroot_regularity_diagnostic, orthonormalize};
use orthojulia::Polynomial;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn verdict(name: &str, pass: bool, detail: String) {
    println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{name} failed: {detail}");
}

fn run_cli(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("orthojulia").chain(args.iter().copied()))
}

#[test]
fn circle_orthonormality() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let code = run_cli(&["ortho", "--measure", "circle", "--m", "4096", "--N", "20", "--out", out]);
    assert_eq!(code, 0);
    let rows = read_sequence_csv(&dir.path().join("sequence.csv")).unwrap();
    let mut off = 0.0f64;
    let mut gamma = 0.0f64;
    for (n, g, p) in &rows {
        gamma = gamma.max((g - 1.0).abs());
        for (k, coef) in p.coeffs().iter().enumerate() {
            if k != *n {
                off = off.max(coef.norm());
            }
        }
        gamma = gamma.max((p.leading().norm() - 1.0).abs());
    }
    let pass = rows.len() == 21 && off < 1e-8 && gamma < 1e-8;
    verdict("circle orthonormality", pass, format!("max off-leading {off:.2e}, max |gamma-1| {gamma:.2e}"));
}

#[test]
fn chebyshev_reproduction() {
    let seq = orthonormalize(&interval_equilibrium_measure(2048).unwrap(), 15).unwrap();
    let monic = monic_sequence(&seq);
    let mut coef = 0.0f64;
    let mut gamma = 0.0f64;
    for (n, p) in monic.iter().enumerate().skip(1) {
        coef = coef.max(p.max_coeff_distance(&chebyshev_closed_form(n).unwrap()));
        gamma = gamma.max((seq.gammas()[n] - std::f64::consts::FRAC_1_SQRT_2).abs());
    }
    let pass = coef < 1e-6 && gamma < 1e-6;
    verdict(
        "Chebyshev reproduction",
        pass,
        format!("max coefficient error {coef:.2e}, max |gamma - 2^-1/2| {gamma:.2e}"),
    );
}

#[test]
fn regularity_diagnostic() {
    let circle = orthonormalize(&unit_circle_measure(4096).unwrap(), 20).unwrap();
    let e_circle = nthroot_regularity_diagnostic(&circle, 1.0).unwrap();
    let worst_circle = e_circle.iter().map(|(_, e)| *e).fold(0.0, f64::max);
    let interval = orthonormalize(&interval_equilibrium_measure(2048).unwrap(), 15).unwrap();
    let e_interval = nthroot_regularity_diagnostic(&interval, 1.0).unwrap();
    let tail: Vec<f64> = e_interval.iter().filter(|(n, _)| *n >= 2).map(|(_, e)| *e).collect();
    let decreasing = tail.windows(2).all(|w| w[1] < w[0]);
    let e15 = e_interval.last().unwrap().1;
    let pass = worst_circle < 1e-8 && e15 < 0.03 && decreasing;
    verdict(
        "regularity diagnostic",
        pass,
        format!("circle max e_n {worst_circle:.2e}, interval e_15 {e15:.4}, decreasing for n >= 2: {decreasing}"),
    );
}

fn multibrot(n: usize, c0: Complex64) -> Polynomial {
    Polynomial::monomial(n).affine_image(c(1.0, 0.0), c0).unwrap()
}

fn disk_cells(grid: &GridSpec) -> PointSet {
    PointSet::new(grid.centers().filter(|z| z.norm() <= 1.0).collect()).unwrap().with_spacing(grid.cell_diagonal())
}

#[test]
fn multibrot_convergence() {
    let grid = GridSpec::square(c(0.0, 0.0), 1.5, 1024).unwrap();
    let circle = PointSet::circle(c(0.0, 0.0), 1.0, 4096).unwrap();
    let hull = convex_hull(&circle).unwrap();
    let disk = LimitTarget { set: disk_cells(&grid), against: SetKind::K };

    let degrees = [4, 8, 16, 32];
    let rasters: Vec<(usize, JuliaApproximation)> = degrees
        .iter()
        .map(|&n| (n, filled_julia_raster_with(&multibrot(n, c(0.5, 0.0)), grid, 64, RasterMode::Covering).unwrap()))
        .collect();
    let table = convergence_table(&circle, &hull, &rasters, Some(&disk)).unwrap();
    let last = &rasters[3].1;
    let d_j = hausdorff(&raster_to_points(last, SetKind::J).unwrap(), &circle);
    let d_k = table.rows[3].d_h_target.unwrap();

    let dust = |n: usize| {
        let r = filled_julia_raster_with(&multibrot(n, c(2.0, 0.0)), grid, 64, RasterMode::Covering).unwrap();
        raster_to_points(&r, SetKind::K).map_or(f64::INFINITY, |k| hausdorff(&k, &circle))
    };
    let d_dust = dust(32);
    let d_dust_64 = dust(64);

    let columns =
        [table.column_j(), table.column_k_hull(), table.column_target().into_iter().map(Option::unwrap).collect()];
    // at most one increase in total, and that one within 10%
    let violations: usize = columns.iter().map(|col| increases(col, 0.0)).sum();
    let large: usize = columns.iter().map(|col| increases(col, 0.1)).sum();
    let pass = d_j <= 0.05 && d_k <= 0.05 && d_dust <= 0.05 && violations <= 1 && large == 0;
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ");
    verdict(
        "Multibrot convergence",
        pass,
        format!(
            "n=32 c=0.5: d_H(J, circle) {d_j:.4}, d_H(K, disk) {d_k:.4}; c=2: d_H(K, circle) {d_dust:.4} (n=64: {d_dust_64:.4}); \
             columns [{}] [{}] [{}], increases {violations}",
            fmt(&columns[0]),
            fmt(&columns[1]),
            fmt(&columns[2])
        ),
    );
}

#[test]
fn chebyshev_limit() {
    let grid = GridSpec::square(c(0.0, 0.0), 2.8, 1024).unwrap();
    let segment = PointSet::segment(c(-2.0, 0.0), c(2.0, 0.0), 4097).unwrap();
    let mut distances = Vec::new();
    let mut connected = Vec::new();
    for n in [4, 8, 16, 32] {
        let p = chebyshev_closed_form(n).unwrap().affine_image(c(1.0, 0.0), c(0.5, 0.0)).unwrap();
        let r = filled_julia_raster_with(&p, grid, 64, RasterMode::Covering).unwrap();
        let d = match raster_to_points(&r, SetKind::K) {
            Ok(k) => hausdorff(&k, &segment),
            Err(_) => f64::INFINITY,
        };
        distances.push(d);
        connected.push((n, is_connected(&p, 256).unwrap()));
    }
    let decreasing = distances.windows(2).all(|w| w[1] < w[0]);
    let disconnected = connected.iter().filter(|(n, _)| *n >= 8).all(|(_, c)| !c);
    let last = *distances.last().unwrap();
    let pass = decreasing && last <= 0.2 && disconnected;
    verdict(
        "Chebyshev limit",
        pass,
        format!(
            "d_H(K_n, [-2,2]) for n=4,8,16,32: {}; connected {:?}",
            distances.iter().map(|d| format!("{d:.4}")).collect::<Vec<_>>().join(" "),
            connected
        ),
    );
}

#[test]
fn diamond_locus() {
    let mut a = linspace(-1.5, 1.5, 61);
    a.retain(|x| x.abs() > 1e-12);
    let b = linspace(-3.0, 3.0, 61);
    let started = std::time::Instant::now();
    let scan = locus_scan(&LocusFamily::ScaledChebyshev, 16, &a, &b, 256).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    let bad = scan
        .connected_parameters()
        .filter(|(a, b)| !(a.abs() <= 1.1 && b.abs() <= 2.0 * (1.0 - a.abs()) + 0.2))
        .count();
    let (i, j) = scan.nearest_cell(0.5, 0.0);
    let centre = scan.is_connected_at(i, j) && (scan.a_values[i] - 0.5).abs() < 1e-9 && scan.b_values[j].abs() < 1e-9;
    let pass = bad == 0 && centre && elapsed <= 300.0;
    verdict(
        "diamond locus",
        pass,
        format!(
            "{}x{} cells, {:.1}% connected, {bad} outside the diamond, (0.5, 0) connected: {centre}, {elapsed:.1}s",
            a.len(),
            b.len(),
            100.0 * scan.fraction_connected()
        ),
    );
}

#[test]
fn capacity_identity() {
    let seq = orthonormalize(&interval_equilibrium_measure(2048).unwrap(), 9).unwrap();
    let mut errors = Vec::new();
    for n in [3, 5, 9] {
        let p = &seq.polys()[n];
        let grid = GridSpec::square(c(0.0, 0.0), 2.5, 1024).unwrap();
        let r = filled_julia_raster_with(p, grid, 64, RasterMode::Covering).unwrap();
        let boundary = raster_to_points(&r, SetKind::J).unwrap();
        let estimate = leja_capacity(&boundary, 200).unwrap();
        let expected = seq.gammas()[n].powf(-1.0 / (n - 1) as f64);
        errors.push((n, estimate, expected, (estimate / expected - 1.0).abs()));
    }
    let circle = leja_capacity(&PointSet::circle(c(0.0, 0.0), 1.0, 4096).unwrap(), 200).unwrap();
    let segment = leja_capacity(&PointSet::segment(c(-2.0, 0.0), c(2.0, 0.0), 4097).unwrap(), 200).unwrap();
    let pass = errors.iter().all(|e| e.3 <= 0.10) && (circle - 1.0).abs() <= 0.05 && (segment - 1.0).abs() <= 0.05;
    verdict(
        "capacity identity",
        pass,
        format!(
            "{}; circle {circle:.4}, [-2,2] {segment:.4}",
            errors
                .iter()
                .map(|(n, est, exp, rel)| format!("n={n} Leja {est:.4} vs {exp:.4} ({:.1}%)", 100.0 * rel))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
}

#[test]
fn green_gap_decay() {
    let grid = GridSpec::square(c(0.0, 0.0), 2.0, 512).unwrap();
    let degrees = [4, 8, 16, 32];
    let monomial: Vec<f64> =
        degrees.iter().map(|&n| green_gap(&Polynomial::monomial(n), n, &grid, 64).unwrap()).collect();
    let shifted: Vec<f64> =
        degrees.iter().map(|&n| n as f64 * green_gap(&multibrot(n, c(0.25, 0.0)), n, &grid, 64).unwrap()).collect();
    let worst = monomial.iter().copied().fold(0.0, f64::max);
    let ratio = shifted.iter().copied().fold(0.0, f64::max) / shifted.iter().copied().fold(f64::INFINITY, f64::min);
    let pass = worst <= 1e-9 && ratio <= 4.0;
    verdict(
        "Green gap",
        pass,
        format!(
            "z^n max gap {worst:.2e}; z^n+0.25 n*gap {} (max/min {ratio:.3}), n^2*gap {}",
            shifted.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(" "),
            shifted.iter().zip(degrees).map(|(v, n)| format!("{:.4}", v * n as f64)).collect::<Vec<_>>().join(" ")
        ),
    );
}

fn barnsley_errors(seed: u64) -> (f64, f64, Polynomial, Polynomial) {
    let f = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
    let mu = max_entropy_measure(&f, 1_000_000, seed, 100).unwrap();
    let seq = orthonormalize(&mu, 4).unwrap();
    let monic = monic_sequence(&seq);
    let f2 = iterate_polynomial(&f, 2).unwrap();
    (monic[2].max_coeff_distance(&f), monic[4].max_coeff_distance(&f2), monic[2].clone(), monic[4].clone())
}

#[test]
fn barnsley_iterates() {
    let started = std::time::Instant::now();
    let (e2, e4, p2, p4) = barnsley_errors(20_240_901);
    let (o2, o4, q2, q4) = barnsley_errors(7);
    let elapsed = started.elapsed().as_secs_f64();
    let seeds_agree = p2.max_coeff_distance(&q2) <= 0.02 && p4.max_coeff_distance(&q4) <= 0.05;
    let pass = e2 <= 0.02 && e4 <= 0.05 && o2 <= 0.02 && o4 <= 0.05 && seeds_agree && elapsed <= 180.0;
    verdict(
        "Barnsley iterates",
        pass,
        format!(
            "|P2 - f| {e2:.4}, |P4 - f^2| {e4:.4}; second seed {o2:.4}, {o4:.4}; seeds agree: {seeds_agree}; {elapsed:.1}s"
        ),
    );
}

/// A `K`-raster on a square grid centered at `center` with half-width `half`.
fn k_points(p: &Polynomial, center: Complex64, half: f64, res: usize) -> (PointSet, f64) {
    let grid = GridSpec::square(center, half, res).unwrap();
    let r = filled_julia_raster(p, grid, 128).unwrap();
    (raster_to_points(&r, SetKind::K).unwrap(), grid.cell_diagonal())
}

#[test]
fn conjugacy_transport() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst_ratio = 0.0f64;
    let mut agree = 0;
    let trials = 20;
    for _ in 0..trials {
        let d = rng.gen_range(2..=8usize);
        // P near λ z^d, so K_P is a fat quasidisk
        let mut coeffs: Vec<Complex64> =
            (0..d).map(|_| c(rng.gen_range(-0.15..0.15), rng.gen_range(-0.15..0.15))).collect();
        coeffs.push(Complex64::from_polar(rng.gen_range(0.8..1.25), rng.gen_range(0.0..std::f64::consts::TAU)));
        let p = Polynomial::new(coeffs).unwrap();
        let a = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let b = Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let phi = AffineMap::new(a, b).unwrap();
        // q = φ∘P, so φ⁻¹∘q = P and q∘φ⁻¹ = φ∘P∘φ⁻¹
        let q = p.affine_image(a, b).unwrap();
        let (left, right) = orthojulia::dynamics::conjugate_pair(&q, &phi).unwrap();

        let half = 1.6;
        let (kl, dl) = k_points(&left, c(0.0, 0.0), half, 512);
        let (kr, dr) = k_points(&right, b, half * a.norm(), 512);
        let moved = kl.map(|z| phi.apply(z));
        let coarse = (dl * a.norm()).max(dr);
        worst_ratio = worst_ratio.max(hausdorff(&moved, &kr) / coarse);
        if is_connected(&left, 256).unwrap() == is_connected(&right, 256).unwrap() {
            agree += 1;
        }
    }
    let pass = worst_ratio <= 2.0 && agree == trials;
    verdict(
        "conjugacy transport",
        pass,
        format!(
            "{trials} pairs: worst Hausdorff {worst_ratio:.3} coarse cell diagonals, verdicts agree {agree}/{trials}"
        ),
    );
}

fn random_measure(rng: &mut ChaCha8Rng) -> DiscreteMeasure {
    let m = rng.gen_range(32..96);
    let nodes: Vec<Complex64> = (0..m).map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0))).collect();
    let raw: Vec<f64> = (0..m).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let drift = 1.0 - weights.iter().sum::<f64>();
    weights[0] += drift;
    DiscreteMeasure::new(nodes, weights, "random").unwrap()
}

fn fejer_check(rng: &mut ChaCha8Rng) -> (bool, f64) {
    let mut worst = 0.0f64;
    let mut measures = vec![
        interval_equilibrium_measure(256).unwrap(),
        unit_circle_measure(256).unwrap(),
        max_entropy_measure(&Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap(), 4000, 3, 100).unwrap(),
    ];
    measures.extend((0..10).map(|_| random_measure(rng)));
    for mu in &measures {
        let hull = convex_hull(&PointSet::new(mu.nodes().to_vec()).unwrap()).unwrap();
        let top = (mu.len() / 8).min(12);
        let seq = orthonormalize(mu, top).unwrap();
        for p in &seq.polys()[1..] {
            for z in polynomial_roots(p).unwrap() {
                worst = worst.max(hull.distance(z));
            }
        }
    }
    (worst <= 1e-6, worst)
}

fn random_points(rng: &mut ChaCha8Rng) -> PointSet {
    let count = rng.gen_range(1..200);
    let shift = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
    PointSet::new((0..count).map(|_| shift + c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()).unwrap()
}

fn metric_check(rng: &mut ChaCha8Rng) -> (bool, f64) {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (x, y, z) = (random_points(rng), random_points(rng), random_points(rng));
        let (xy, yx, yz, xz) = (hausdorff(&x, &y), hausdorff(&y, &x), hausdorff(&y, &z), hausdorff(&x, &z));
        worst = worst.max(hausdorff(&x, &x)).max((xy - yx).abs()).max(xz - xy - yz).max(-xy);
    }
    (worst <= 1e-12, worst)
}

fn escape_radius_check(rng: &mut ChaCha8Rng) -> (bool, usize) {
    let mut failures = 0;
    for _ in 0..1000 {
        let d = rng.gen_range(2..=10usize);
        let mut coeffs: Vec<Complex64> =
            (0..d).map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))).collect();
        coeffs.push(Complex64::from_polar(rng.gen_range(0.2..3.0), rng.gen_range(0.0..std::f64::consts::TAU)));
        let p = Polynomial::new(coeffs).unwrap();
        let r = escape_radius(&p).unwrap();
        for _ in 0..20 {
            let z = Complex64::from_polar(r * rng.gen_range(1.0..3.0), rng.gen_range(0.0..std::f64::consts::TAU));
            if p.eval(z).norm() < 2.0 * z.norm() * (1.0 - 1e-12) {
                failures += 1;
            }
        }
    }
    (failures == 0, failures)
}

fn pushforward_check(rng: &mut ChaCha8Rng) -> (bool, f64) {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mu = random_measure(rng);
        let a = Complex64::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let phi = AffineMap::new(a, c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).unwrap();
        let back = pushforward(&pushforward(&mu, &phi), &phi.inverse());
        for (u, v) in mu.nodes().iter().zip(back.nodes()) {
            worst = worst.max((u - v).norm());
        }
        for (u, v) in mu.weights().iter().zip(back.weights()) {
            worst = worst.max((u - v).abs());
        }
    }
    (worst <= 1e-12, worst)
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

fn determinism_check() -> (bool, Vec<String>) {
    let runs: Vec<Vec<&str>> = vec![
        vec!["ortho", "--measure", "mme", "--f", "-1,0,1", "--m", "4000", "--N", "4", "--write-measure"],
        vec!["julia", "--poly", "cheb", "--n", "4,8", "--grid", "-2.5:2.5:-2.5:2.5", "--res", "200"],
        vec!["converge", "--family", "multibrot", "--n", "4,8", "--c", "0.5", "--res", "200", "--rasters"],
        vec!["locus", "--family", "cheb", "--n", "8", "--a", "-1.5:1.5:21", "--b", "-3:3:21", "--drop-zero"],
        vec!["iterates", "--f", "-1,0,1", "--m", "4000", "--k", "1,2", "--n", "1,2", "--res", "128"],
        vec!["greengap", "--family", "multibrot", "--n", "4..16", "--res", "64"],
    ];
    let mut bad = Vec::new();
    for args in runs {
        let outputs: Vec<_> = ["1", "3", "8"]
            .iter()
            .map(|threads| {
                let dir = tempfile::tempdir().unwrap();
                let mut full = args.clone();
                full.extend(["--seed", "11", "--threads", threads, "--out", dir.path().to_str().unwrap()]);
                assert_eq!(run_cli(&full), 0, "{full:?}");
                dir_bytes(dir.path())
            })
            .collect();
        if outputs.windows(2).any(|w| w[0] != w[1]) || outputs[0].is_empty() {
            bad.push(args[0].to_string());
        }
    }
    (bad.is_empty(), bad)
}

#[test]
fn property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (fejer, fejer_worst) = fejer_check(&mut rng);
    let (metric, metric_worst) = metric_check(&mut rng);
    let (radius, radius_failures) = escape_radius_check(&mut rng);
    let (push, push_worst) = pushforward_check(&mut rng);
    let (det, det_bad) = determinism_check();
    let pass = fejer && metric && radius && push && det;
    verdict(
        "property suites",
        pass,
        format!(
            "Fejer max hull distance {fejer_worst:.1e}; metric axioms worst {metric_worst:.1e}; \
             escape radius failures {radius_failures}/20000; pushforward round trip {push_worst:.1e}; \
             nondeterministic subcommands {det_bad:?}"
        ),
    );
}
