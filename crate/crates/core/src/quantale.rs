//! Finite unital integral quantales.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinQuantale {
    size: usize,
    leq: Vec<bool>,
    tensor: Vec<usize>,
    unit: usize,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FinQuantale {
    /// Validates the lattice, the monoid and join preservation.
    pub fn new(leq: Vec<Vec<bool>>, tensor: Vec<Vec<usize>>, unit: usize) -> Result<FinQuantale> {
        let n = leq.len();
        let q = |m: String| Error::Quantale(m);
        if n == 0 {
            return Err(q("empty carrier".into()));
        }
        if leq.iter().any(|r| r.len() != n)
            || tensor.len() != n
            || tensor.iter().any(|r| r.len() != n)
        {
            return Err(q("table shape".into()));
        }
        if unit >= n {
            return Err(q(format!("unit {unit} out of range")));
        }
        let flat_leq: Vec<bool> = leq.concat();
        let flat_tensor: Vec<usize> = tensor.concat();
        if let Some(&v) = flat_tensor.iter().find(|&&v| v >= n) {
            return Err(q(format!("tensor value {v} out of range")));
        }
        let le = |a: usize, b: usize| flat_leq[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(q(format!("order not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(q(format!("order not antisymmetric at {a}, {b}")));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(q(format!("order not transitive at {a}, {b}, {c}")));
                    }
                }
            }
        }
        let extremum = |upper: bool, a: usize, b: usize| -> Option<usize> {
            let bounds: Vec<usize> = (0..n)
                .filter(|&c| {
                    if upper {
                        le(a, c) && le(b, c)
                    } else {
                        le(c, a) && le(c, b)
                    }
                })
                .collect();
            bounds.iter().copied().find(|&c| {
                bounds
                    .iter()
                    .all(|&d| if upper { le(c, d) } else { le(d, c) })
            })
        };
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] =
                    extremum(true, a, b).ok_or_else(|| q(format!("no join of {a}, {b}")))?;
                meet[a * n + b] =
                    extremum(false, a, b).ok_or_else(|| q(format!("no meet of {a}, {b}")))?;
            }
        }
        let top = (0..n)
            .find(|&t| (0..n).all(|a| le(a, t)))
            .ok_or_else(|| q("no top".into()))?;
        let bottom = (0..n)
            .find(|&b| (0..n).all(|a| le(b, a)))
            .ok_or_else(|| q("no bottom".into()))?;
        let v = FinQuantale {
            size: n,
            leq: flat_leq,
            tensor: flat_tensor,
            unit,
            join,
            meet,
            bottom,
            top,
        };
        v.check_monoid()?;
        Ok(v)
    }

    fn check_monoid(&self) -> Result<()> {
        let q = |m: String| Err(Error::Quantale(m));
        let n = self.size;
        if self.unit != self.top {
            return q("unit not top".into());
        }
        for a in 0..n {
            if self.tensor(a, self.unit) != a || self.tensor(self.unit, a) != a {
                return q(format!("unit law fails at {a}"));
            }
            if self.tensor(a, self.bottom) != self.bottom
                || self.tensor(self.bottom, a) != self.bottom
            {
                return q(format!("bottom not absorbing at {a}"));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.tensor(self.tensor(a, b), c) != self.tensor(a, self.tensor(b, c)) {
                        return q(format!("tensor not associative at {a}, {b}, {c}"));
                    }
                    let bc = self.join(b, c);
                    if self.tensor(a, bc) != self.join(self.tensor(a, b), self.tensor(a, c)) {
                        return q(format!(
                            "left tensor does not preserve join at {a}, {b}, {c}"
                        ));
                    }
                    if self.tensor(bc, a) != self.join(self.tensor(b, a), self.tensor(c, a)) {
                        return q(format!(
                            "right tensor does not preserve join at {a}, {b}, {c}"
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    #[inline]
    pub fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor[a * self.size + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn leq_rows(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.size).map(<[bool]>::to_vec).collect()
    }

    pub fn tensor_rows(&self) -> Vec<Vec<usize>> {
        self.tensor
            .chunks(self.size)
            .map(<[usize]>::to_vec)
            .collect()
    }

    fn chain(n: usize, tensor: impl Fn(usize, usize) -> usize) -> FinQuantale {
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        let t = (0..n)
            .map(|a| (0..n).map(|b| tensor(a, b)).collect())
            .collect();
        FinQuantale::new(leq, t, n - 1).expect("fixture is a quantale")
    }

    /// The Boolean quantale `{⊥ < ⊤}` with `⊗ = ∧`.
    pub fn boolean() -> FinQuantale {
        Self::chain(2, |a, b| a.min(b))
    }

    /// `0 < 1 < 2` with `⊗ = min`.
    pub fn min_chain3() -> FinQuantale {
        Self::chain(3, |a, b| a.min(b))
    }

    /// `{0, ½, 1}` with `a ⊗ b = max(0, a + b − 1)`, indexed `0, 1, 2`.
    pub fn lukasiewicz3() -> FinQuantale {
        Self::chain(3, |a, b| (a + b).saturating_sub(2))
    }

    /// `⊥ < a, b < ⊤` with `⊗ = ∧`; indices `0 = ⊥`, `1 = a`, `2 = b`, `3 = ⊤`.
    pub fn diamond() -> FinQuantale {
        let le = |a: usize, b: usize| a == b || a == 0 || b == 3;
        let leq: Vec<Vec<bool>> = (0..4).map(|a| (0..4).map(|b| le(a, b)).collect()).collect();
        let meet = |a: usize, b: usize| {
            if le(a, b) {
                a
            } else if le(b, a) {
                b
            } else {
                0
            }
        };
        let t = (0..4)
            .map(|a| (0..4).map(|b| meet(a, b)).collect())
            .collect();
        FinQuantale::new(leq, t, 3).expect("fixture is a quantale")
    }

    /// Looks up a shipped fixture: `V2`, `min3`, `luk3`, `diamond`.
    pub fn fixture(name: &str) -> Option<FinQuantale> {
        match name {
            "V2" => Some(Self::boolean()),
            "min3" => Some(Self::min_chain3()),
            "luk3" => Some(Self::lukasiewicz3()),
            "diamond" => Some(Self::diamond()),
            _ => None,
        }
    }

    pub const FIXTURES: [&'static str; 4] = ["V2", "min3", "luk3", "diamond"];
}

/// Revalidates a quantale from its raw tables.
pub fn quantale_check(leq: Vec<Vec<bool>>, tensor: Vec<Vec<usize>>, unit: usize) -> Result<()> {
    FinQuantale::new(leq, tensor, unit).map(|_| ())
}
