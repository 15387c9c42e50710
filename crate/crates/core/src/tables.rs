//! Published chord-length ratios `a°±/a` for reference tubes.

/// One published row: chiral indices and the two chord ratios `(a₊*, a₋*)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordRatioRow {
    pub n: i64,
    pub m: i64,
    pub plus: f64,
    pub minus: f64,
}

const fn row(n: i64, m: i64, plus: f64, minus: f64) -> ChordRatioRow {
    ChordRatioRow { n, m, plus, minus }
}

/// Armchair tubes; both ratios coincide.
pub const ARMCHAIR_CHORD_RATIOS: [ChordRatioRow; 5] = [
    row(4, 4, 0.9809, 0.9809),
    row(5, 5, 0.9877, 0.9877),
    row(6, 6, 0.9915, 0.9915),
    row(10, 10, 0.9969, 0.9969),
    row(20, 20, 0.9992, 0.9992),
];

pub const CHIRAL_CHORD_RATIOS: [ChordRatioRow; 5] = [
    row(4, 2, 0.9540, 0.9811),
    row(6, 1, 0.9635, 0.9947),
    row(6, 5, 0.9887, 0.9911),
    row(7, 4, 0.9867, 0.9936),
    row(8, 3, 0.9854, 0.9957),
];

pub const ZIGZAG_CHORD_RATIOS: [ChordRatioRow; 5] = [
    row(5, 0, 0.9355, 0.9959),
    row(6, 0, 0.9549, 0.9972),
    row(8, 0, 0.9745, 0.9984),
    row(10, 0, 0.9836, 0.9990),
    row(20, 0, 0.9959, 0.9997),
];

/// Half a unit in the fourth published decimal.
pub const TABLE_TOLERANCE: f64 = 5e-5;
