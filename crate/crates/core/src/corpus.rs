//! Built-in example fans.
//!
//! The same fans ship as JSON files in the workspace `data/` directory.

use crate::fan::Fan;

fn build(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
    Fan::new(
        dim,
        rays.iter().map(|r| r.to_vec()).collect(),
        cones.iter().map(|c| c.to_vec()).collect(),
    )
    .expect("corpus fans are well formed")
}

pub fn p1() -> Fan {
    build(1, &[&[1], &[-1]], &[&[0], &[1]])
}

pub fn p2() -> Fan {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, -1]],
        &[&[0, 1], &[1, 2], &[0, 2]],
    )
}

pub fn p1xp1() -> Fan {
    build(
        2,
        &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]],
        &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]],
    )
}

/// Hirzebruch surface `F_a` with rays `(1,0), (0,1), (-1,a), (0,-1)`.
pub fn hirzebruch(a: i64) -> Fan {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, a], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
    )
}

/// Del Pezzo surface of degree 6: the hexagon fan.
pub fn delpezzo6() -> Fan {
    build(
        2,
        &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 0]],
    )
}

/// One smooth cone: not complete.
pub fn affine_plane() -> Fan {
    build(2, &[&[1, 0], &[0, 1]], &[&[0, 1]])
}

/// One cone of multiplicity 2.
pub fn singular_cone() -> Fan {
    build(2, &[&[1, 0], &[1, 2]], &[&[0, 1]])
}

/// The smooth complete examples, keyed by their data-file names.
pub fn smooth_complete() -> Vec<(&'static str, Fan)> {
    vec![
        ("p1", p1()),
        ("p2", p2()),
        ("p1xp1", p1xp1()),
        ("hirzebruch_0", hirzebruch(0)),
        ("hirzebruch_1", hirzebruch(1)),
        ("hirzebruch_2", hirzebruch(2)),
        ("hirzebruch_3", hirzebruch(3)),
        ("delpezzo6", delpezzo6()),
    ]
}

/// Every bundled fan, including the two non-examples.
pub fn all() -> Vec<(&'static str, Fan)> {
    let mut v = smooth_complete();
    v.push(("singular_cone", singular_cone()));
    v.push(("incomplete_fan", affine_plane()));
    v
}
