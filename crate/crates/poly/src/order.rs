use std::cmp::Ordering;

/// Monomial orders on dense exponent vectors. Index 0 is the largest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    GrevLex,
    /// Block order: grevlex on the first `k` variables, ties broken by
    /// grevlex on the rest. Eliminates the first block.
    Elimination(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Ordering::*;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x^2 z vs x y^2 (x > y > z): equal degree, z-exponent decides.
        assert_eq!(MonomialOrder::GrevLex.cmp(&[2, 0, 1], &[1, 2, 0]), Less);
        assert_eq!(MonomialOrder::GrLex.cmp(&[2, 0, 1], &[1, 2, 0]), Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&[0, 3, 0], &[1, 0, 0]), Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let ord = MonomialOrder::Elimination(1);
        assert_eq!(ord.cmp(&[1, 0, 0], &[0, 5, 5]), Greater);
        assert_eq!(ord.cmp(&[0, 1, 0], &[0, 0, 1]), Greater);
    }
}
