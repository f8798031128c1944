use cvop::epr::PnesKind;
use cvop::par;
use cvop::sweep::{
    evaluate, optimize_r, run_figure_sweep, EvalConfig, FigureData, FigureId, GridSpec, Metric,
    Strategy,
};

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn small(s: usize, r: usize) -> GridSpec {
    GridSpec {
        s_points: Some(s),
        r_points: Some(r),
    }
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let grid = small(6, 5);
    for id in [FigureId::F2, FigureId::F5, FigureId::F6b] {
        let one = par::with_workers(1, || run_figure_sweep(id, &grid, &cfg()))
            .unwrap()
            .unwrap()
            .to_csv();
        let four = par::with_workers(4, || run_figure_sweep(id, &grid, &cfg()))
            .unwrap()
            .unwrap()
            .to_csv();
        assert_eq!(one, four, "figure {id}");
    }
}

#[test]
fn epr_surface_crosses_separable_bound_near_threshold() {
    // s grid 0, 0.025, ..., 1 and r in {0, 0.5, 1}
    let FigureData::Sweep(rows) = run_figure_sweep(FigureId::F2, &small(41, 3), &cfg()).unwrap()
    else {
        panic!("expected sweep rows");
    };
    let along_r1: Vec<_> = rows.iter().filter(|x| x.r == Some(1.0)).collect();
    assert_eq!(along_r1.len(), 41);
    let first_below = along_r1.iter().find(|x| x.value < 2.0).unwrap();
    assert!((first_below.s - 0.4).abs() < 1e-12, "{}", first_below.s);
    assert!(along_r1.iter().all(|x| (x.value < 2.0) == (x.s > 0.378)));
}

#[test]
fn pnes_figure_decreases_with_n() {
    let FigureData::Pnes(rows) =
        run_figure_sweep(FigureId::F4, &GridSpec::default(), &cfg()).unwrap()
    else {
        panic!("expected PNES rows");
    };
    for kind in [PnesKind::Diagonal, PnesKind::Ladder] {
        let series: Vec<f64> = rows
            .iter()
            .filter(|x| x.kind == kind)
            .map(|x| x.value)
            .collect();
        assert_eq!(series.len(), 9);
        assert!(
            series.windows(2).all(|w| w[1] < w[0]),
            "{kind:?}: {series:?}"
        );
    }
}

#[test]
fn fidelity_surface_is_bounded_and_beats_classical_inside() {
    let FigureData::Sweep(rows) = run_figure_sweep(FigureId::F5, &small(11, 11), &cfg()).unwrap()
    else {
        panic!("expected sweep rows");
    };
    assert_eq!(rows.len(), 11 * 11 - 1);
    assert!(rows.iter().all(|x| (0.0..=1.0).contains(&x.value)));
    let f = evaluate(
        Metric::Fidelity,
        Strategy::CoherentAB,
        0.2,
        Some(0.5),
        &cfg(),
    )
    .unwrap();
    assert!(f > 0.5, "{f}");
}

#[test]
fn optimizer_beats_its_neighbours() {
    let c = cfg();
    for (metric, s) in [
        (Metric::Entropy, 0.1),
        (Metric::Epr, 0.06),
        (Metric::Fidelity, 0.1),
    ] {
        let (r, v) = optimize_r(metric, s, Strategy::CoherentAB, &c).unwrap();
        for dr in [-1e-3, 1e-3] {
            let rr = (r + dr).clamp(0.0, 1.0);
            let w = evaluate(metric, Strategy::CoherentAB, s, Some(rr), &c).unwrap();
            assert!(
                metric.score(v) >= metric.score(w) - 1e-12,
                "{metric} s = {s}: r* = {r}"
            );
        }
    }
}

#[test]
fn csv_rows_are_sorted_and_complete() {
    let data = run_figure_sweep(FigureId::F1a, &small(4, 3), &cfg()).unwrap();
    let csv = data.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("s,r,strategy,metric,value"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4 * 6);
    for row in &rows {
        assert_eq!(row.len(), 5);
        assert_eq!(row[3], "entropy");
        let has_r = row[2].starts_with("coherent");
        assert_eq!(!row[1].is_empty(), has_r, "{row:?}");
    }
    let s: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(s.windows(2).all(|w| w[0] <= w[1]));
}
