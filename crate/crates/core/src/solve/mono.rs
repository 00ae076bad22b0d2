//! Monomials and monomial orders.

use std::cmp::Ordering;

/// Exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            deg: 0,
        }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, deg: 1 }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn total_deg(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&rhs.exps)
                .map(|(a, b)| a + b)
                .collect(),
            deg: self.deg + rhs.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&rhs.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn is_coprime(&self, rhs: &Monomial) -> bool {
        self.exps.iter().zip(&rhs.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Monomial orders used by the solver. `ElimFirst` is the block order that
/// eliminates the first variable: it compares the first exponent and breaks
/// ties by degrevlex on the rest; a Gröbner basis under it restricts to a
/// degrevlex basis of the elimination ideal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    DegRevLex,
    Lex,
    ElimFirst,
}

fn degrevlex(a: &[u32], b: &[u32], adeg: u32, bdeg: u32) -> Ordering {
    match adeg.cmp(&bdeg) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            // reversed: smaller trailing exponent is the larger monomial
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

pub fn cmp_mono(order: Order, a: &Monomial, b: &Monomial) -> Ordering {
    match order {
        Order::DegRevLex => degrevlex(&a.exps, &b.exps, a.deg, b.deg),
        Order::Lex => a.exps.cmp(&b.exps),
        Order::ElimFirst => match a.exps[0].cmp(&b.exps[0]) {
            Ordering::Equal => degrevlex(
                &a.exps[1..],
                &b.exps[1..],
                a.deg - a.exps[0],
                b.deg - b.exps[0],
            ),
            o => o,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn degrevlex_orders_as_expected() {
        // x^2 > xy > y^2 > x > y > 1 in two variables
        let seq = [
            m(&[2, 0]),
            m(&[1, 1]),
            m(&[0, 2]),
            m(&[1, 0]),
            m(&[0, 1]),
            m(&[0, 0]),
        ];
        for w in seq.windows(2) {
            assert_eq!(cmp_mono(Order::DegRevLex, &w[0], &w[1]), Ordering::Greater);
        }
        // degrevlex separates x*z and y^2: deg equal, last differing index wins reversed
        assert_eq!(
            cmp_mono(Order::DegRevLex, &m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Less
        );
    }

    #[test]
    fn elimination_block_dominates() {
        // first variable beats any power of the rest
        assert_eq!(
            cmp_mono(Order::ElimFirst, &m(&[1, 0]), &m(&[0, 9])),
            Ordering::Greater
        );
        assert_eq!(
            cmp_mono(Order::ElimFirst, &m(&[0, 2]), &m(&[0, 1])),
            Ordering::Greater
        );
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert_eq!(a.div_into(&a.lcm(&b)), m(&[0, 2]));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 2])));
    }
}
