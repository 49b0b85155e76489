//! The group construction mini-language.
//!
//! ```text
//! spec   := "cyclic:" N | "sym:" N | "dihedral:" N
//!         | "product(" spec "," spec ")"
//!         | "semidirect(" "c:" N "," "p:" spec "," "action:" action ")"
//!         | "perm(" N ( ";" cycles )* ")"
//! action := "[" [ N ( "," N )* ] "]" | "inversion" | "trivial"
//! cycles := ( "(" N ( [","] N )* ")" )+
//! ```
//!
//! In `semidirect`, the action lists the unit mod `c` that each generator of `p`
//! acts by; `inversion` sends every generator to `-1` and `trivial` to `1`.
//! Whitespace between tokens is ignored.

use super::build::{self, cycles_to_perm};
use super::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

/// Parses and constructs a group with the default order cap.
pub fn make_group(spec: &str) -> Result<FiniteGroup> {
    make_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn make_group_with_cap(spec: &str, cap: usize) -> Result<FiniteGroup> {
    let mut parser = Parser { src: spec, pos: 0, cap };
    let g = parser.spec()?;
    parser.skip_ws();
    if parser.pos != spec.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(g)
}

enum Action {
    Units(Vec<u64>),
    Inversion,
    Trivial,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    cap: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        let text = &self.src[self.pos..self.pos + digits];
        let value = text.parse().map_err(|_| self.error("number out of range"))?;
        self.pos += digits;
        Ok(value)
    }

    /// Rebases errors from group constructors onto the current position.
    fn construct(&self, r: Result<FiniteGroup>) -> Result<FiniteGroup> {
        r.map_err(|e| match e {
            Error::InvalidArgument(msg) => self.error(msg),
            other => other,
        })
    }

    fn spec(&mut self) -> Result<FiniteGroup> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("cyclic:") {
            let n = self.number()?;
            self.construct(build::cyclic(n, self.cap))
        } else if self.eat("sym:") {
            let n = self.number()?;
            self.construct(build::symmetric(n as usize, self.cap))
        } else if self.eat("dihedral:") {
            let n = self.number()?;
            self.construct(build::dihedral(n, self.cap))
        } else if self.eat("product(") {
            let a = self.spec()?;
            self.expect(",")?;
            let b = self.spec()?;
            self.expect(")")?;
            a.direct_product(&b, self.cap)
        } else if self.eat("semidirect(") {
            self.expect("c:")?;
            let m = self.number()?;
            self.expect(",")?;
            self.expect("p:")?;
            let p = self.spec()?;
            self.expect(",")?;
            self.expect("action:")?;
            let action = self.action()?;
            self.expect(")")?;
            let units = match action {
                Action::Units(u) => u,
                Action::Inversion => vec![m.saturating_sub(1); p.generators().len()],
                Action::Trivial => vec![1; p.generators().len()],
            };
            self.construct(build::semidirect_cyclic(m, &p, &units, self.cap))
        } else if self.eat("perm(") {
            let degree = self.number()? as usize;
            let mut gens = Vec::new();
            while self.eat(";") {
                let cycles = self.cycles()?;
                gens.push(self.construct_perm(degree, &cycles)?);
            }
            self.expect(")")?;
            let label = self.src[start..self.pos].to_string();
            build::permutation_group(label, degree, &gens, self.cap)
        } else {
            Err(self.error("unknown group constructor"))
        }
    }

    fn construct_perm(&self, degree: usize, cycles: &[Vec<usize>]) -> Result<Vec<u8>> {
        cycles_to_perm(degree, cycles).map_err(|e| match e {
            Error::InvalidArgument(msg) => self.error(msg),
            other => other,
        })
    }

    fn action(&mut self) -> Result<Action> {
        if self.eat("inversion") {
            return Ok(Action::Inversion);
        }
        if self.eat("trivial") {
            return Ok(Action::Trivial);
        }
        self.expect("[")?;
        let mut units = Vec::new();
        if !self.eat("]") {
            loop {
                units.push(self.number()?);
                if self.eat("]") {
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(Action::Units(units))
    }

    fn cycles(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut cycles = Vec::new();
        while self.eat("(") {
            let mut cycle = Vec::new();
            while !self.eat(")") {
                cycle.push(self.number()? as usize);
                self.eat(",");
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_constructor() {
        assert_eq!(make_group("cyclic:1").unwrap().order(), 1);
        assert_eq!(make_group("sym:3").unwrap().order(), 6);
        assert_eq!(make_group("dihedral:4").unwrap().order(), 8);
        assert_eq!(make_group("product(sym:3, cyclic:2)").unwrap().order(), 12);
        let d = make_group("semidirect(c:3,p:cyclic:2,action:[2])").unwrap();
        assert_eq!(d.order(), 6);
        assert!(!d.is_abelian());
        let inv = make_group("semidirect(c:3, p:cyclic:2, action: inversion)").unwrap();
        assert!(!inv.is_abelian());
        let triv = make_group("semidirect(c:3,p:cyclic:2,action:trivial)").unwrap();
        assert!(triv.is_abelian());
        let a4 = make_group("perm(4;(1 2 3);(1 2)(3 4))").unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.label(), "perm(4;(1 2 3);(1 2)(3 4))");
        let v4 = make_group("perm(4;(1,2)(3,4);(1,3)(2,4))").unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(make_group("perm(3)").unwrap().order(), 1);
    }

    #[test]
    fn nested_products() {
        let g = make_group("product(product(cyclic:2,cyclic:2),semidirect(c:5,p:cyclic:4,action:[2]))")
            .unwrap();
        assert_eq!(g.order(), 80);
        assert!(g.check_axioms());
    }

    #[test]
    fn parse_errors_carry_positions() {
        for bad in ["", "cyclic", "cyclic:x", "foo:3", "product(sym:3)", "sym:3 junk", "cyclic:0", "perm(3;(1 4))"] {
            match make_group(bad) {
                Err(Error::Parse { .. }) => {}
                other => panic!("{bad:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(make_group("cyclic:201"), Err(Error::CapExceeded { cap: 200 })));
        assert!(matches!(
            make_group("product(sym:4,sym:4)"),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(make_group_with_cap("cyclic:500", 500).unwrap().order(), 500);
    }

    #[test]
    fn bad_action_is_reported() {
        assert!(matches!(
            make_group("semidirect(c:7,p:cyclic:2,action:[2])"),
            Err(Error::BadAction { .. })
        ));
    }
}
