//! Main-path enumeration, differentials and homology against the brute-force oracle.

use std::collections::HashMap;

use motivic_ext::cobar::{CobarEngine, CobarWord};
use motivic_ext::ext::{Calculator, Window};
use motivic_ext::steenrod::{enumerate_monomials, AlgebraParams, Monomial, Side};
use motivic_ext::{Bidegree, Tridegree};
use motivic_ext_oracle::{
    oracle_basis, oracle_differential, oracle_enumerate, oracle_homology_dim, OMono, OWord, OracleConfig,
    OracleSide,
};

fn to_oracle(m: &Monomial) -> OMono {
    let mut taus = m.tau_flags();
    taus.sort_unstable();
    OMono { theta: m.theta_exp(), taus, xis: m.xi_exps().to_vec() }
}

fn word_to_oracle(w: &CobarWord) -> OWord {
    OWord { theta: w.theta_exp(), factors: w.factors().iter().map(to_oracle).collect() }
}

fn oracle_side(side: Side) -> OracleSide {
    match side {
        Side::Classical => OracleSide::Classical,
        Side::Real => OracleSide::Real,
        Side::C2 => OracleSide::C2,
    }
}

const SIDES: [Side; 3] = [Side::Classical, Side::Real, Side::C2];

#[test]
fn enumeration_matches() {
    for side in SIDES {
        let params = AlgebraParams::new(3, side).unwrap();
        let cfg = OracleConfig::new(3, oracle_side(side), 24, 24).unwrap();
        for total in 0..=24 {
            for n in -20..=20 {
                let deg = Bidegree::new(total - n, n);
                let mut main: Vec<OMono> = enumerate_monomials(&params, deg).iter().map(to_oracle).collect();
                main.sort();
                assert_eq!(main, oracle_enumerate(&cfg, (deg.m, deg.n)).unwrap(), "{side} {deg}");
            }
        }
    }
}

#[test]
fn spec_enumeration_example() {
    let cfg = OracleConfig::new(3, OracleSide::Real, 8, 8).unwrap();
    let params = AlgebraParams::new(3, Side::Real).unwrap();
    let main: Vec<OMono> = enumerate_monomials(&params, Bidegree::new(3, 2)).iter().map(to_oracle).collect();
    assert_eq!(main.len(), 2);
    let oracle = oracle_enumerate(&cfg, (3, 2)).unwrap();
    assert!(main.iter().all(|m| oracle.contains(m)));
}

/// Every cell with f ≤ 3, total ≤ 16, |weight| ≤ 16, and every side.
#[test]
fn differentials_and_homology_match() {
    let window = Window::new(3, 16, -16, 16);
    let engine = CobarEngine::new(3, 16).unwrap();
    let calc = Calculator::new(3, 16).unwrap();
    for side in SIDES {
        let cfg = OracleConfig::new(3, oracle_side(side), 16, 16).unwrap();
        let chart = calc.chart(side, &window).unwrap();
        for t in window.tridegrees() {
            let deg = (t.deg.m, t.deg.n);
            let src = engine.basis(side, t).unwrap();
            let dst = engine.basis(side, Tridegree { f: t.f + 1, deg: t.deg }).unwrap();
            let d = engine.differential(side, t).unwrap();
            let od = oracle_differential(&cfg, t.f, deg).unwrap();

            let mut src_o: Vec<OWord> = src.basis.iter().map(word_to_oracle).collect();
            let mut dst_o: Vec<OWord> = dst.basis.iter().map(word_to_oracle).collect();
            let col: HashMap<&OWord, usize> = od.source.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let row: HashMap<&OWord, usize> = od.target.iter().enumerate().map(|(i, w)| (w, i)).collect();
            for (j, w) in src_o.iter().enumerate() {
                for (i, v) in dst_o.iter().enumerate() {
                    assert_eq!(d.get(i, j), od.matrix[row[v]][col[w]], "{side} {t}: {w:?} -> {v:?}");
                }
            }
            src_o.sort();
            dst_o.sort();
            assert_eq!(src_o, od.source, "{side} {t} source basis");
            assert_eq!(dst_o, od.target, "{side} {t} target basis");
            assert_eq!(src_o, oracle_basis(&cfg, t.f, deg).unwrap());

            let dim = oracle_homology_dim(&cfg, t.f, deg).unwrap();
            assert_eq!(chart.cells[&t].dimension, dim, "{side} {t} homology");
        }
    }
}

#[test]
fn empty_bidegree() {
    let cfg = OracleConfig::new(3, OracleSide::Real, 8, 8).unwrap();
    assert!(oracle_enumerate(&cfg, (-1, 0)).unwrap().is_empty());
    assert!(oracle_basis(&cfg, 2, (1, 0)).unwrap().is_empty());
}
