//! The fusion product `E^(a) ⋆_m F^(b)`, built by peeling `E` off the left.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::qarith::{q_factorial, q_integer, LaurentPoly, RationalFunction};
use crate::repmod::{apply_udot, gram, TensorVector, WeightParam};
use crate::udot1::{mul_gen, Generator, UdotElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionResult {
    pub input: (u32, u32, i32),
    pub value: UdotElement,
}

/// Memo table for [`fuse`], scoped to one run.
#[derive(Default)]
pub struct Fuser {
    memo: HashMap<(u32, u32, i32), UdotElement>,
}

impl Fuser {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fuse(&mut self, a: u32, b: u32, m: i32) -> FusionResult {
        FusionResult {
            input: (a, b, m),
            value: self.value(a, b, m),
        }
    }

    fn value(&mut self, a: u32, b: u32, m: i32) -> UdotElement {
        if let Some(v) = self.memo.get(&(a, b, m)) {
            return v.clone();
        }
        let v = if a == 0 {
            let mut x = UdotElement::idempotent(m);
            for _ in 0..b {
                x = mul_gen(Generator::F, &x);
            }
            x.scale(&RationalFunction::new(
                LaurentPoly::one(),
                q_factorial(b),
            ))
        } else {
            let mut x = mul_gen(Generator::E, &self.value(a - 1, b, m));
            if b > 0 {
                // q^{<i, m + 2(a-1) - 2b> + 2}/(q - q^{-1}) · q^{b-1}
                let e = m + 2 * (a as i32 - 1) - 2 * b as i32 + 2 + (b as i32 - 1);
                let c = RationalFunction::new(
                    LaurentPoly::q_pow(e),
                    LaurentPoly::from_int_terms(&[(1, 1), (-1, -1)]),
                );
                let y = self.value(a - 1, b - 1, m).scale(&c);
                x = x.sub(&y).expect("same weight");
            }
            x.scale(&RationalFunction::new(LaurentPoly::one(), q_integer(a as i64)))
        };
        self.memo.insert((a, b, m), v.clone());
        v
    }
}

/// `E^(a) ⋆_m F^(b)` with a fresh memo table.
pub fn fuse(a: u32, b: u32, m: i32) -> FusionResult {
    Fuser::new().fuse(a, b, m)
}

/// The action of `fuse(a, b, m)` on the vacuum minus `E^(a)ξ ⊗ F^(b)η`.
pub fn defining_limit_remainder(a: u32, b: u32, m: i32) -> TensorVector {
    let param = WeightParam::symbolic(m);
    let v = apply_udot(&fuse(a, b, m).value, &TensorVector::vacuum(param)).expect("same weight");
    v.sub(&TensorVector::pure(param, a, b)).expect("same module")
}

pub fn verify_defining_limit(a: u32, b: u32, m: i32) -> bool {
    defining_limit_remainder(a, b, m).is_asympt_zero()
}

/// `lim_{p→∞} (x·(ξ⊗η), y·(ξ⊗η))`.
pub fn pairing_module_limit(x: &UdotElement, y: &UdotElement) -> Result<RationalFunction> {
    if x.weight() != y.weight() {
        return Err(Error::WeightMismatch {
            left: x.weight(),
            right: y.weight(),
        });
    }
    let v0 = TensorVector::vacuum(WeightParam::symbolic(x.weight()));
    let vx = apply_udot(x, &v0)?;
    let vy = apply_udot(y, &v0)?;
    gram(&vx, &vy)?.eval_u0()
}
