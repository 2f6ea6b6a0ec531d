//! Integer lattice span checks via Hermite-style row elimination.

/// True when the projections of `vectors` to the listed coordinates span
/// the full standard lattice Z^m on those coordinates.
pub fn spans_standard_lattice(vectors: &[Vec<i64>], coords: &[usize]) -> bool {
    let m = coords.len();
    if m == 0 {
        return true;
    }
    let mut rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| coords.iter().map(|&c| v[c] as i128).collect())
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..m {
        loop {
            // Find the row with the smallest nonzero entry in this column.
            let mut best: Option<usize> = None;
            for r in pivot_row..rows.len() {
                if rows[r][col] != 0 {
                    match best {
                        Some(b) if rows[b][col].abs() <= rows[r][col].abs() => {}
                        _ => best = Some(r),
                    }
                }
            }
            let Some(b) = best else {
                return false; // column has no pivot: rank deficient
            };
            rows.swap(pivot_row, b);
            let mut reduced = true;
            let p = rows[pivot_row][col];
            for r in pivot_row + 1..rows.len() {
                if rows[r][col] != 0 {
                    let f = rows[r][col] / p;
                    for c in 0..m {
                        let sub = f * rows[pivot_row][c];
                        rows[r][c] -= sub;
                    }
                    if rows[r][col] != 0 {
                        reduced = false;
                    }
                }
            }
            if reduced {
                break;
            }
        }
        pivot_row += 1;
    }
    // Upper triangular now; the span is all of Z^m iff every pivot is ±1.
    (0..m).all(|c| rows[c][c].abs() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_basis_spans() {
        let vs = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(spans_standard_lattice(&vs, &[0, 1, 2]));
    }

    #[test]
    fn even_sublattice_does_not_span() {
        // Pairwise sums of basis vectors span the index-2 "even" sublattice.
        let vs = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert!(!spans_standard_lattice(&vs, &[0, 1, 2]));
    }

    #[test]
    fn rank_deficiency_detected() {
        let vs = vec![vec![1, 1], vec![2, 2]];
        assert!(!spans_standard_lattice(&vs, &[0, 1]));
    }

    #[test]
    fn redundant_generators_are_fine() {
        let vs = vec![
            vec![3, 1],
            vec![2, 1],
            vec![5, 2],
            vec![-3, -1],
        ];
        assert!(spans_standard_lattice(&vs, &[0, 1]));
    }

    #[test]
    fn projection_selects_coordinates() {
        // On coordinate 1 alone, {(7, 1)} spans.
        let vs = vec![vec![7, 1]];
        assert!(spans_standard_lattice(&vs, &[1]));
        assert!(!spans_standard_lattice(&vs, &[0]));
    }

    #[test]
    fn empty_coordinate_set_is_trivially_spanned() {
        let vs: Vec<Vec<i64>> = vec![];
        assert!(spans_standard_lattice(&vs, &[]));
    }
}
