use crate::exact::Field;

/// Row echelon basis grown one vector at a time.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, cols: usize) -> Self {
        Self {
            field: field.clone(),
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Residual of `v` after eliminating every stored pivot.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = &self.field;
        for (p, row) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let f = &self.field;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PrimeField;

    #[test]
    fn incremental_rank() {
        let f = PrimeField::new(7).unwrap();
        let mut e = Echelon::new(&f, 3);
        assert!(e.insert(vec![1, 2, 3]));
        assert!(e.insert(vec![0, 1, 1]));
        assert!(!e.insert(vec![2, 5, 0]));
        assert!(e.contains(&[1, 3, 4]));
        assert!(e.insert(vec![0, 0, 1]));
        assert_eq!(e.rank(), 3);
    }
}
