use std::sync::OnceLock;

use crate::algebra::{Arena, MultiPoly, VarArena, Var};

/// Variables shared by the asymptotic computations.
///
/// * `d`, `delta`: surface degree and twist.
/// * `l1..l3`: partition coordinates.
/// * `x2, x3, g`: free coordinates of the unit-scaled filtration region (`λ2/m`, `λ3/m`, `γ/m`).
/// * `t1..t3`: barycentric coordinates on a reference simplex.
#[derive(Debug)]
pub struct Vars {
    pub arena: Arena,
    pub d: Var,
    pub delta: Var,
    pub l: [Var; 3],
    pub x: [Var; 3],
    pub t: [Var; 3],
}

impl Vars {
    pub fn poly(&self, v: Var) -> MultiPoly {
        MultiPoly::var(&self.arena, v)
    }

    pub fn constant(&self, r: crate::algebra::Rational) -> MultiPoly {
        MultiPoly::constant(&self.arena, r)
    }
}

pub fn vars() -> &'static Vars {
    static VARS: OnceLock<Vars> = OnceLock::new();
    VARS.get_or_init(|| {
        let names = ["d", "delta", "l1", "l2", "l3", "x2", "x3", "g", "t1", "t2", "t3"];
        let arena = VarArena::new(names).expect("distinct names");
        let v = |n: &str| arena.var(n).expect("declared");
        Vars {
            d: v("d"),
            delta: v("delta"),
            l: [v("l1"), v("l2"), v("l3")],
            x: [v("x2"), v("x3"), v("g")],
            t: [v("t1"), v("t2"), v("t3")],
            arena,
        }
    })
}
