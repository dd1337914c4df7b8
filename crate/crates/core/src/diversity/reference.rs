use super::DiversityError;
use crate::Scalar;

/// Simplex-lattice reference directions with `divisions` steps per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePointSet<T> {
    objectives: usize,
    divisions: usize,
    points: Vec<Vec<T>>,
}

impl<T> ReferencePointSet<T> {
    pub fn objectives(&self) -> usize {
        self.objectives
    }

    pub fn divisions(&self) -> usize {
        self.divisions
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `n choose k`, exact in integers.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (1..=k).fold(1u64, |acc, i| acc * (n + 1 - i) / i)
}

/// Every point of the unit simplex in `objectives` dimensions whose
/// coordinates are multiples of `1 / divisions`, in lexicographic order of
/// the integer compositions.
pub fn das_dennis<T: Scalar>(
    objectives: usize,
    divisions: usize,
) -> Result<ReferencePointSet<T>, DiversityError> {
    if objectives < 2 || divisions < 1 {
        return Err(DiversityError::InvalidLattice {
            objectives,
            divisions,
        });
    }
    let mut points = Vec::new();
    let mut counts = vec![0usize; objectives];
    compose(0, divisions, &mut counts, &mut |c| {
        let p = T::from_count(divisions);
        points.push(c.iter().map(|&k| T::from_count(k) / p).collect());
    });
    Ok(ReferencePointSet {
        objectives,
        divisions,
        points,
    })
}

fn compose(axis: usize, left: usize, counts: &mut [usize], emit: &mut impl FnMut(&[usize])) {
    if axis == counts.len() - 1 {
        counts[axis] = left;
        emit(counts);
        return;
    }
    for k in 0..=left {
        counts[axis] = k;
        compose(axis + 1, left - k, counts, emit);
    }
}
