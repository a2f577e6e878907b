use std::fmt;
use std::sync::{Mutex, OnceLock};

/// A named indeterminate of the coefficient field.
///
/// The deformation parameter is `S` with `q = s^2`. Pair-indexed symbols are
/// stored with their indices as given; `lambda` symbols are only ever created
/// with `i < j` (see [`crate::scalars::Scalar::lambda`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    S,
    Lambda(u32, u32),
    T(u32),
    Phi(u32, u32),
    Mu(u32, u32),
    Mu1(u32, u32),
    Mu2(u32, u32),
    Sym(u32),
}

fn registry() -> &'static Mutex<Vec<String>> {
    static REG: OnceLock<Mutex<Vec<String>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(Vec::new()))
}

impl Var {
    /// Interns a free-form symbol name.
    pub fn sym(name: &str) -> Var {
        let mut reg = registry().lock().expect("symbol registry poisoned");
        if let Some(pos) = reg.iter().position(|n| n == name) {
            return Var::Sym(pos as u32);
        }
        reg.push(name.to_string());
        Var::Sym((reg.len() - 1) as u32)
    }

    pub fn sym_name(id: u32) -> String {
        let reg = registry().lock().expect("symbol registry poisoned");
        reg.get(id as usize).cloned().unwrap_or_else(|| format!("sym{id}"))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::S => write!(f, "s"),
            Var::Lambda(i, j) => write!(f, "lambda_{{{i},{j}}}"),
            Var::T(k) => write!(f, "t_{k}"),
            Var::Phi(i, j) => write!(f, "phi_{{{i},{j}}}"),
            Var::Mu(i, j) => write!(f, "mu_{{{i},{j}}}"),
            Var::Mu1(i, j) => write!(f, "mu1_{{{i},{j}}}"),
            Var::Mu2(i, j) => write!(f, "mu2_{{{i},{j}}}"),
            Var::Sym(id) => write!(f, "{}", Var::sym_name(id)),
        }
    }
}
