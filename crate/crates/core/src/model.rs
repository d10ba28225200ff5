use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Gl,
    So,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Gl => "gl",
            Kind::So => "so",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gl" => Ok(Kind::Gl),
            "so" => Ok(Kind::So),
            _ => Err(Error::InvalidArgument(format!("unknown algebra {:?}", s))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// +1 or -1.
    pub fn unit(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::InvalidArgument(format!("unknown sign {:?}", s))),
        }
    }
}

/// Algebra kind plus N, with the ordered index alphabet.
///
/// gl: 1..N. so, odd N = 2n+1: -n..n. so, even N = 2n: -n..-1, 1..n.
/// Tensors address indices by position in the alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Model {
    pub kind: Kind,
    pub n: usize,
    alphabet: Vec<i32>,
}

impl Model {
    pub fn new(kind: Kind, n: usize) -> Result<Self> {
        let alphabet: Vec<i32> = match kind {
            Kind::Gl => {
                if n < 2 {
                    return Err(Error::InvalidArgument("gl needs N >= 2".into()));
                }
                (1..=n as i32).collect()
            }
            Kind::So => {
                if n < 3 {
                    return Err(Error::InvalidArgument("so needs N >= 3".into()));
                }
                let h = (n / 2) as i32;
                if n % 2 == 1 {
                    (-h..=h).collect()
                } else {
                    (-h..=h).filter(|&i| i != 0).collect()
                }
            }
        };
        if n > 12 {
            return Err(Error::InvalidArgument("N > 12 is not supported".into()));
        }
        Ok(Model { kind, n, alphabet })
    }

    pub fn gl(n: usize) -> Self {
        Model::new(Kind::Gl, n).expect("valid gl model")
    }

    pub fn so(n: usize) -> Self {
        Model::new(Kind::So, n).expect("valid so model")
    }

    pub fn is_so(&self) -> bool {
        self.kind == Kind::So
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &[i32] {
        &self.alphabet
    }

    pub fn label(&self, pos: u8) -> i32 {
        self.alphabet[pos as usize]
    }

    pub fn pos(&self, label: i32) -> Option<u8> {
        self.alphabet
            .iter()
            .position(|&l| l == label)
            .map(|p| p as u8)
    }

    /// Position of the index -i (so only; the alphabet is symmetric).
    pub fn opposite(&self, pos: u8) -> u8 {
        (self.n - 1 - pos as usize) as u8
    }

    /// 2*rho_j for each alphabet position: (N-2, N-4, ..., 2-N) with a single 0
    /// for odd N and a doubled 0 for even N. Equal to the exponent of v in q^rho_j.
    pub fn rho2(&self) -> Result<Vec<i32>> {
        if !self.is_so() {
            return Err(Error::Unsupported(
                "metric exponents exist only for so".into(),
            ));
        }
        let n = self.n as i32;
        let top: Vec<i32> = (1..=n / 2).map(|k| n - 2 * k).collect();
        let mut out = top.clone();
        if n % 2 == 1 {
            out.push(0);
        }
        out.extend(top.iter().rev().map(|x| -x));
        debug_assert_eq!(out.len(), self.n);
        Ok(out)
    }

    pub fn name(&self) -> String {
        format!("{}({})", self.kind, self.n)
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabets() {
        assert_eq!(Model::gl(3).alphabet(), &[1, 2, 3]);
        assert_eq!(Model::so(3).alphabet(), &[-1, 0, 1]);
        assert_eq!(Model::so(4).alphabet(), &[-2, -1, 1, 2]);
        assert_eq!(Model::so(5).alphabet(), &[-2, -1, 0, 1, 2]);
    }

    #[test]
    fn rho_lists() {
        assert_eq!(Model::so(3).rho2().unwrap(), vec![1, 0, -1]);
        assert_eq!(Model::so(4).rho2().unwrap(), vec![2, 0, 0, -2]);
        assert_eq!(Model::so(5).rho2().unwrap(), vec![3, 1, 0, -1, -3]);
        assert_eq!(Model::so(6).rho2().unwrap(), vec![4, 2, 0, 0, -2, -4]);
        assert!(Model::gl(3).rho2().is_err());
    }

    #[test]
    fn opposite_positions() {
        let m = Model::so(4);
        for p in 0..4u8 {
            assert_eq!(m.label(m.opposite(p)), -m.label(p));
        }
    }

    #[test]
    fn rejects_small() {
        assert!(Model::new(Kind::Gl, 1).is_err());
        assert!(Model::new(Kind::So, 2).is_err());
    }
}
