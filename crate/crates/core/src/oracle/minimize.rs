use crate::error::{GeometryError, Result};
use crate::geometry::{PlaneVector, TriangleEdges};

/// Outcome of a simplex search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizationResult {
    /// Best point polled during the search.
    pub point: PlaneVector,
    /// Objective at `point`; no polled point has a smaller value.
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Edge length of the initial right-angled simplex.
    pub initial_step: f64,
    /// Stop once every simplex vertex is within this distance of every other.
    pub diameter_tol: f64,
    pub max_iterations: usize,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

pub const MAX_ITERATIONS: usize = 10_000;

/// Nelder-Mead in the plane.
pub fn nelder_mead_2d<F>(f: F, start: PlaneVector, opts: &SimplexOptions) -> MinimizationResult
where
    F: Fn(PlaneVector) -> f64,
{
    let h = opts.initial_step;
    let mut simplex = [
        start,
        start + PlaneVector::new(h, 0.0),
        start + PlaneVector::new(0.0, h),
    ];
    let mut values = simplex.map(&f);
    let mut best = (simplex[0], values[0]);
    let poll = |p: PlaneVector, best: &mut (PlaneVector, f64)| {
        let v = f(p);
        if v < best.1 {
            *best = (p, v);
        }
        v
    };
    for (p, v) in simplex.iter().zip(values) {
        if v < best.1 {
            best = (*p, v);
        }
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);

        let diameter = simplex[0]
            .distance(simplex[1])
            .max(simplex[0].distance(simplex[2]))
            .max(simplex[1].distance(simplex[2]));
        if diameter < opts.diameter_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid = 0.5 * (simplex[0] + simplex[1]);
        let worst = simplex[2];
        let reflected = centroid + REFLECT * (centroid - worst);
        let f_reflected = poll(reflected, &mut best);

        if f_reflected < values[0] {
            let expanded = centroid + EXPAND * (centroid - worst);
            let f_expanded = poll(expanded, &mut best);
            if f_expanded < f_reflected {
                simplex[2] = expanded;
                values[2] = f_expanded;
            } else {
                simplex[2] = reflected;
                values[2] = f_reflected;
            }
            continue;
        }
        if f_reflected < values[1] {
            simplex[2] = reflected;
            values[2] = f_reflected;
            continue;
        }

        let (candidate, accept) = if f_reflected < values[2] {
            let outside = centroid + CONTRACT * (reflected - centroid);
            let f_out = poll(outside, &mut best);
            (Some((outside, f_out)), f_out <= f_reflected)
        } else {
            let inside = centroid + CONTRACT * (worst - centroid);
            let f_in = poll(inside, &mut best);
            (Some((inside, f_in)), f_in < values[2])
        };
        match candidate {
            Some((p, v)) if accept => {
                simplex[2] = p;
                values[2] = v;
            }
            _ => {
                for i in 1..3 {
                    simplex[i] = simplex[0] + SHRINK * (simplex[i] - simplex[0]);
                    values[i] = poll(simplex[i], &mut best);
                }
            }
        }
    }

    MinimizationResult {
        point: best.0,
        value: best.1,
        iterations,
        converged,
    }
}

/// Minimizes `|P - A| + |P - B| + |P - C|` over the plane with a multi-start
/// simplex search.
///
/// The triangle is placed with `C` at the origin, `B = (a, 0)` and `A` above
/// the x-axis, with `A` located by the law of cosines. Starts: the centroid
/// and each edge midpoint pulled halfway towards the centroid.
pub fn minimize_distance_sum(t: &TriangleEdges) -> Result<MinimizationResult> {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let ax = (a * a + b * b - c * c) / (2.0 * a);
    let ay = (b * b - ax * ax).max(0.0).sqrt();
    let va = PlaneVector::new(ax, ay);
    let vb = PlaneVector::new(a, 0.0);
    let vc = PlaneVector::ZERO;
    let objective = |p: PlaneVector| p.distance(va) + p.distance(vb) + p.distance(vc);

    let perimeter = t.perimeter();
    let opts = SimplexOptions {
        initial_step: 0.05 * perimeter,
        diameter_tol: 1e-10 * perimeter,
        max_iterations: MAX_ITERATIONS,
    };
    let centroid = (1.0 / 3.0) * (va + vb + vc);
    let starts = [
        centroid,
        0.5 * (0.5 * (vb + vc) + centroid),
        0.5 * (0.5 * (va + vc) + centroid),
        0.5 * (0.5 * (va + vb) + centroid),
    ];

    let mut total_iterations = 0;
    let mut best: Option<MinimizationResult> = None;
    for start in starts {
        let run = nelder_mead_2d(objective, start, &opts);
        total_iterations += run.iterations;
        if !run.converged {
            return Err(GeometryError::NoConvergence {
                iterations: run.iterations,
            });
        }
        if best.map_or(true, |b| run.value < b.value) {
            best = Some(run);
        }
    }
    let best = best.expect("at least one start");
    Ok(MinimizationResult {
        iterations: total_iterations,
        ..best
    })
}
