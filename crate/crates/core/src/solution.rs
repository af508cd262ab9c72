use crate::geometry::{PlaneVector, TriangleEdges, Vertex};

/// Distances from an interior point to the three vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarSolution {
    /// `[a', b', c']` = `[|XA|, |XB|, |XC|]`.
    pub distances: [f64; 3],
    /// Position of the interior point in the frame of
    /// [`embed_triangle`](crate::fermat::embed_triangle).
    pub point: PlaneVector,
    /// Relative law-of-cosines residual for each edge, see [`closure_residuals`].
    pub residuals: [f64; 3],
}

impl StarSolution {
    pub fn a_prime(&self) -> f64 {
        self.distances[0]
    }

    pub fn b_prime(&self) -> f64 {
        self.distances[1]
    }

    pub fn c_prime(&self) -> f64 {
        self.distances[2]
    }

    pub fn distance_to(&self, vertex: Vertex) -> f64 {
        self.distances[vertex.index()]
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Residuals of `d_j^2 + d_k^2 - 2 d_j d_k cos(psi_i) = e_i^2` for each
/// edge `i` (with `j, k` the other two indices), divided by
/// `max(e_i^2, d_j^2 + d_k^2)`.
pub fn closure_residuals(edges: &TriangleEdges, distances: [f64; 3], cosines: [f64; 3]) -> [f64; 3] {
    closure_residuals_raw(edges.as_array(), distances, cosines)
}

/// [`closure_residuals`] for edge triples that need not form a triangle.
/// A zero denominator yields a zero residual when both sides vanish and
/// infinity otherwise.
pub fn closure_residuals_raw(e: [f64; 3], distances: [f64; 3], cosines: [f64; 3]) -> [f64; 3] {
    std::array::from_fn(|i| {
        let dj = distances[(i + 1) % 3];
        let dk = distances[(i + 2) % 3];
        let lhs = dj * dj + dk * dk - 2.0 * dj * dk * cosines[i];
        let e2 = e[i] * e[i];
        let scale = e2.max(dj * dj + dk * dk);
        let diff = (lhs - e2).abs();
        if scale > 0.0 {
            diff / scale
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    })
}

/// Largest componentwise difference between two distance triples, relative
/// to the largest distance in either.
pub fn relative_difference(x: [f64; 3], y: [f64; 3]) -> f64 {
    let scale = x.iter().chain(y.iter()).fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    x.iter()
        .zip(y.iter())
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max)
        / scale
}
