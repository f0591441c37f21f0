use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;

use super::{pc_closed, pc_sequence};
use crate::composition::Modulus;
use crate::error::{Error, Result};
use crate::oracle::Oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Oracle,
    Recurrence,
    Closed,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Oracle, Method::Recurrence, Method::Closed];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Recurrence => "recurrence",
            Method::Closed => "closed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = &'static str;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "recurrence" => Ok(Method::Recurrence),
            "closed" => Ok(Method::Closed),
            _ => Err("expected one of: oracle, recurrence, closed"),
        }
    }
}

/// One `(n, m)` cell with the value from each requested method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountCell {
    pub n: u64,
    pub m: Modulus,
    pub values: Vec<(Method, BigUint)>,
}

impl CountCell {
    pub fn agree(&self) -> bool {
        self.values.windows(2).all(|w| w[0].1 == w[1].1)
    }

    /// The agreed value (first method's value).
    pub fn value(&self) -> &BigUint {
        &self.values[0].1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub moduli: Vec<Modulus>,
    pub n_max: u64,
    pub methods: Vec<Method>,
    /// Ordered by modulus (in `moduli` order), then by `n`.
    pub cells: Vec<CountCell>,
}

impl CountTable {
    pub fn all_agree(&self) -> bool {
        self.cells.iter().all(CountCell::agree)
    }

    pub fn column(&self, m: Modulus) -> impl Iterator<Item = &CountCell> {
        self.cells.iter().filter(move |c| c.m == m)
    }
}

/// Computes `pc(n, m)` for `1 ≤ n ≤ n_max` and every modulus with each
/// method, flagging per-cell agreement.
pub fn count_table(
    moduli: &[Modulus],
    n_max: u64,
    methods: &[Method],
    oracle: &Oracle,
) -> Result<CountTable> {
    if methods.is_empty() {
        return Err(Error::NoMethods);
    }
    if n_max == 0 {
        return Err(Error::NTooSmall { n: 0, min: 1 });
    }
    if methods.contains(&Method::Oracle) {
        oracle.check(n_max)?;
    }
    let mut methods = methods.to_vec();
    methods.dedup();
    let mut cells = Vec::with_capacity(moduli.len() * n_max as usize);
    for &m in moduli {
        let recurrence = methods
            .contains(&Method::Recurrence)
            .then(|| pc_sequence(m, n_max as usize));
        for n in 1..=n_max {
            let mut values = Vec::with_capacity(methods.len());
            for &method in &methods {
                let v = match method {
                    Method::Oracle => oracle.count_pc(n, m)?,
                    Method::Recurrence => recurrence.as_ref().expect("computed above")[n as usize].clone(),
                    Method::Closed => pc_closed(n, m)?,
                };
                values.push((method, v));
            }
            cells.push(CountCell { n, m, values });
        }
    }
    Ok(CountTable { moduli: moduli.to_vec(), n_max, methods, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn column_u64(t: &CountTable, modulus: Modulus) -> Vec<u64> {
        t.column(modulus).map(|c| u64::try_from(c.value()).unwrap()).collect()
    }

    #[test]
    fn recurrence_and_closed_m2() {
        let t = count_table(&[m(2)], 6, &[Method::Recurrence, Method::Closed], &Oracle::default())
            .unwrap();
        assert_eq!(column_u64(&t, m(2)), [1, 2, 2, 6, 6, 18]);
        assert!(t.all_agree());
    }

    #[test]
    fn oracle_and_recurrence_m1() {
        let t = count_table(&[m(1)], 4, &[Method::Oracle, Method::Recurrence], &Oracle::default())
            .unwrap();
        assert_eq!(column_u64(&t, m(1)), [1, 2, 4, 8]);
        assert!(t.all_agree());
    }

    #[test]
    fn oracle_and_recurrence_m5() {
        let t = count_table(&[m(5)], 12, &[Method::Oracle, Method::Recurrence], &Oracle::default())
            .unwrap();
        assert_eq!(t.cells.len(), 12);
        assert!(t.all_agree());
    }

    #[test]
    fn errors() {
        let o = Oracle::default();
        assert_eq!(count_table(&[m(2)], 5, &[], &o), Err(Error::NoMethods));
        assert!(matches!(
            count_table(&[m(2)], 30, &[Method::Oracle], &o),
            Err(Error::OracleCapExceeded { .. })
        ));
        assert_eq!(
            count_table(&[m(6)], 5, &[Method::Closed], &o),
            Err(Error::UnsupportedClosedForm(m(6)))
        );
    }

    #[test]
    fn disagreement_is_flagged() {
        let cell = CountCell {
            n: 3,
            m: m(2),
            values: alloc::vec![(Method::Oracle, BigUint::from(2u32)), (Method::Closed, BigUint::from(3u32))],
        };
        assert!(!cell.agree());
    }
}
