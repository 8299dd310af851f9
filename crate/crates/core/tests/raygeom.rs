use num_complex::Complex64;
use proptest::prelude::*;
use trisect::raygeom::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn cube_roots_have_exact_values() {
    assert_eq!(zeta(1).unwrap(), c(1.0, 0.0));
    let z2 = zeta(2).unwrap();
    assert_eq!(z2, c(-0.5, 3f64.sqrt() / 2.0));
    assert!((z2 * zeta(3).unwrap() - 1.0).norm() < 1e-15);
    assert!((z2 * z2 * z2 - 1.0).norm() < 1e-15);
    assert!(zeta(0).is_err());
    assert!(zeta(4).is_err());
}

#[test]
fn upper_imaginary_axis_lies_in_omega_two() {
    let o2 = Sector::omega(2).unwrap();
    assert!(in_sector(c(0.0, 1.0), &o2));
    assert!(!in_sector(c(1.0, 0.0), &o2));
    assert!(!in_sector(c(0.0, 0.0), &o2));
}

#[test]
fn open_sectors_partition_the_punctured_plane_off_their_edges() {
    for k in 0..720 {
        let deg = 0.5 * k as f64 + 0.25;
        let z = unit(deg) * 1.7;
        let hits = (1..=6).filter(|&p| in_sector(z, &Sector::s(p).unwrap())).count();
        assert_eq!(hits, 1, "arg {deg}");
    }
    assert!(Sector::s(7).is_err());
}

#[test]
fn sector_edges_are_excluded() {
    for p in 1..=6 {
        let s = Sector::s(p).unwrap();
        let edge = unit(60.0 * (p as f64 - 1.0));
        assert!(!in_sector(edge, &s));
    }
}

#[test]
fn omega_sectors_cover_the_plane_once_in_the_incoming_convention() {
    let count = |z| (1..=3).filter(|&p| in_sector(z, &Sector::omega_incoming(p).unwrap())).count();
    for k in 0..360 {
        let z = unit(k as f64 + 0.5) * 2.3;
        assert_eq!(count(z), 1, "arg {k}");
    }
    // The glued interior rays at 90°, 210°, 330° belong to one sector each;
    // the boundaries at 30°, 150°, 270° belong to none.
    for deg in [90.0, 210.0, 330.0] {
        assert_eq!(count(unit(deg) * 2.3), 1, "arg {deg}");
    }
    for deg in [30.0, 150.0, 270.0] {
        assert_eq!(count(unit(deg) * 2.3), 0, "arg {deg}");
    }
}

#[test]
fn omega_sectors_rotate_cyclically() {
    let z2 = zeta(2).unwrap();
    for k in 0..360 {
        let z = unit(k as f64 + 0.3);
        for p in 1..=3 {
            let here = in_sector(z, &Sector::omega_incoming(p).unwrap());
            let q = next_index(p);
            let there = in_sector(z * z2, &Sector::omega_incoming(q).unwrap());
            assert_eq!(here, there, "arg {k}, p {p}");
        }
    }
}

#[test]
fn omega_minus_is_the_reflection_through_the_origin() {
    for k in 0..360 {
        let z = unit(k as f64 + 0.1) * 0.8;
        for p in 1..=3 {
            assert_eq!(
                in_sector(z, &Sector::omega_incoming(p).unwrap()),
                in_sector(-z, &Sector::omega_minus(p).unwrap())
            );
        }
    }
}

#[test]
fn triangle_membership_examples() {
    let t = TriangleRegion::new(1.0, Triangle::Ta).unwrap();
    assert!(in_triangle(c(0.0, 0.0), &t));
    assert!(!in_triangle(c(0.0, 1.5), &t));
    assert!(in_triangle(c(0.0, -2.0), &t));
    assert!(!in_triangle(c(0.0, -2.1), &t));
    assert!(TriangleRegion::new(-1.0, Triangle::Ta).is_err());
}

#[test]
fn hexagon_vertices_lie_in_both_triangles_at_radius_two_a_over_root_three() {
    let a = 1.3;
    let t = TriangleRegion::new(a, Triangle::Ta).unwrap();
    let ts = TriangleRegion::new(a, Triangle::TaStar).unwrap();
    for v in TriangleRegion::hexagon_vertices(a) {
        assert!((v.norm() - 2.0 * a / 3f64.sqrt()).abs() < 1e-14);
        assert!(in_triangle(v, &t) && in_triangle(v, &ts));
        assert!(!in_triangle(v * 1.01, &t) || !in_triangle(v * 1.01, &ts));
    }
}

proptest! {
    #[test]
    fn starred_triangle_is_the_conjugate(re in -4.0..4.0f64, im in -4.0..4.0f64, a in 0.0..3.0f64) {
        let z = c(re, im);
        let t = TriangleRegion::new(a, Triangle::Ta).unwrap();
        let ts = TriangleRegion::new(a, Triangle::TaStar).unwrap();
        prop_assert_eq!(in_triangle(z, &t), in_triangle(z.conj(), &ts));
    }

    #[test]
    fn rotation_by_zeta_two_shifts_sectors_by_two(deg in 0.0..360.0f64, r in 0.1..10.0f64) {
        let z = unit(deg) * r;
        let z2 = zeta(2).unwrap();
        for p in 1..=6 {
            let q = (p + 1) % 6 + 1;
            prop_assert_eq!(
                in_sector(z, &Sector::s(p).unwrap()),
                in_sector(z * z2, &Sector::s(q).unwrap())
            );
        }
    }

    #[test]
    fn rays_contain_their_points(deg in 0.0..360.0f64, t in 0.01..50.0f64) {
        let d = unit(deg);
        let out = Ray::outgoing(d);
        let inc = Ray::incoming(d);
        prop_assert!(out.contains(out.at(t)));
        prop_assert!(!inc.contains(out.at(t)));
        prop_assert!(inc.contains(-d * t));
    }
}
