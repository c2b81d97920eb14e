//! Simple types over the base type of natural numbers.

use std::cmp::max;
use std::fmt;
use std::rc::Rc;

/// A simple type, either `N` or an arrow. Level and width are cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleType(Rc<TypeNode>);

#[derive(PartialEq, Eq, Hash)]
struct TypeNode {
    shape: Shape,
    level: usize,
    width: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Shape {
    Base,
    Arrow(SimpleType, SimpleType),
}

/// Sublevel `(level, width)`, ordered lexicographically; `N` is `(0, 0)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sublevel {
    pub level: usize,
    pub width: usize,
}

impl fmt::Display for Sublevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            write!(f, "0")
        } else {
            write!(f, "({},{})", self.level, self.width)
        }
    }
}

thread_local! {
    static BASE: SimpleType = SimpleType(Rc::new(TypeNode { shape: Shape::Base, level: 0, width: 0 }));
}

impl SimpleType {
    pub fn base() -> SimpleType {
        BASE.with(|b| b.clone())
    }

    pub fn arrow(arg: SimpleType, res: SimpleType) -> SimpleType {
        let level = max(arg.level() + 1, res.level());
        // width of the uncurried form: number of arguments vs widths of arguments
        let args_here = 1 + res.arity();
        let mut width = max(args_here, arg.width());
        for a in res.args() {
            width = max(width, a.width());
        }
        SimpleType(Rc::new(TypeNode { shape: Shape::Arrow(arg, res), level, width }))
    }

    /// Builds `args[0], ..., args[r-1] -> N`.
    pub fn from_args(args: Vec<SimpleType>) -> SimpleType {
        args.into_iter().rev().fold(SimpleType::base(), |acc, a| SimpleType::arrow(a, acc))
    }

    pub fn shape(&self) -> &Shape {
        &self.0.shape
    }

    pub fn is_base(&self) -> bool {
        matches!(self.0.shape, Shape::Base)
    }

    pub fn level(&self) -> usize {
        self.0.level
    }

    pub fn width(&self) -> usize {
        self.0.width
    }

    pub fn sublevel(&self) -> Sublevel {
        Sublevel { level: self.level(), width: self.width() }
    }

    /// Argument types of the uncurried view.
    pub fn args(&self) -> Vec<SimpleType> {
        let mut out = Vec::new();
        let mut t = self.clone();
        while let Shape::Arrow(a, r) = t.shape().clone() {
            out.push(a);
            t = r;
        }
        out
    }

    pub fn arity(&self) -> usize {
        let mut n = 0;
        let mut t = self;
        while let Shape::Arrow(_, r) = t.shape() {
            n += 1;
            t = r;
        }
        n
    }

    pub fn split(&self) -> Option<(&SimpleType, &SimpleType)> {
        match self.shape() {
            Shape::Arrow(a, r) => Some((a, r)),
            Shape::Base => None,
        }
    }

    /// Pure type `k`: `0 = N`, `k+1 = k -> N`.
    pub fn pure(k: usize) -> SimpleType {
        let mut t = SimpleType::base();
        for _ in 0..k {
            t = SimpleType::arrow(t, SimpleType::base());
        }
        t
    }

    /// Homogeneous type `rho(k, l)`: `rho(0,l) = N`, `rho(k+1,l)` takes `l` arguments of `rho(k,l)`.
    pub fn rho(k: usize, l: usize) -> SimpleType {
        let mut t = SimpleType::base();
        for _ in 0..k {
            t = SimpleType::from_args(vec![t; l]);
        }
        t
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape() {
            Shape::Base => write!(f, "N"),
            Shape::Arrow(a, r) => {
                if a.is_base() {
                    write!(f, "N->{r}")
                } else {
                    write!(f, "({a})->{r}")
                }
            }
        }
    }
}

impl fmt::Debug for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> SimpleType {
        SimpleType::base()
    }

    #[test]
    fn levels_of_pure_types() {
        for k in 0..5 {
            assert_eq!(SimpleType::pure(k).level(), k);
        }
    }

    #[test]
    fn width_examples() {
        assert_eq!(n().width(), 0);
        assert_eq!(SimpleType::pure(1).width(), 1);
        let nn_n = SimpleType::from_args(vec![n(), n()]);
        assert_eq!(nn_n.sublevel(), Sublevel { level: 1, width: 2 });
        let t = SimpleType::from_args(vec![nn_n.clone()]);
        assert_eq!(t.width(), 2);
        assert_eq!(t.level(), 2);
    }

    #[test]
    fn rho_is_homogeneous() {
        let r = SimpleType::rho(2, 3);
        assert_eq!(r.level(), 2);
        assert_eq!(r.width(), 3);
        assert_eq!(r.args().len(), 3);
        assert_eq!(SimpleType::rho(1, 1), SimpleType::pure(1));
    }

    #[test]
    fn uncurried_round_trip() {
        let t = SimpleType::from_args(vec![SimpleType::pure(2), n(), SimpleType::pure(1)]);
        assert_eq!(SimpleType::from_args(t.args()), t);
        assert_eq!(t.to_string(), "((N->N)->N)->N->(N->N)->N");
    }

    #[test]
    fn sublevel_order() {
        assert!(n().sublevel() < SimpleType::pure(1).sublevel());
        assert!(SimpleType::rho(1, 2).sublevel() < SimpleType::rho(2, 1).sublevel());
        assert!(SimpleType::rho(2, 1).sublevel() < SimpleType::rho(2, 2).sublevel());
    }
}
