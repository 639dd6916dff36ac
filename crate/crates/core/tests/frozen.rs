//! Values computed by an independent high-precision implementation and frozen.

use circulant::mahler::{associated_laurent, mahler_quadrature, mahler_root_product};
use circulant::{tau_family, Family, StepFamily};
use dashu_int::UBig;

#[test]
fn steps_two_three_tree_counts() {
    const TAU: [u64; 20] = [
        1, 2, 3, 36, 80, 294, 1183, 3528, 12321, 40960, 130691, 428652, 1373125, 4374734, 13939440,
        44036496, 138761633, 435892338, 1364042851, 4258529280,
    ];
    let fam = StepFamily::new(&[2, 3], Family::Even).unwrap();
    for (i, &want) in TAU.iter().enumerate() {
        let n = i as u64 + 1;
        assert_eq!(
            tau_family(&fam, n).unwrap().value(),
            &UBig::from(want),
            "n = {n}"
        );
    }
}

#[test]
fn mahler_measures() {
    let cases: [(&[u64], Family, f64); 7] = [
        (&[1, 2], Family::Even, 2.618_033_988_749_895),
        (&[1, 3], Family::Even, 2.890_053_638_263_964),
        (&[2, 3], Family::Even, 2.965_572_633_988_663),
        (&[1, 2, 3], Family::Even, 4.419_480_365_787_566_7),
        (&[1], Family::Diagonal, 3.732_050_807_568_877),
        (&[1, 2], Family::Diagonal, 14.535_150_271_859_903),
        (&[1, 2, 3], Family::Diagonal, 32.786_510_645_592_02),
    ];
    for (steps, family, want) in cases {
        let spectrum = associated_laurent(steps, family).unwrap();
        let roots = mahler_root_product(&spectrum).value;
        let quad = mahler_quadrature(&spectrum).unwrap().value;
        assert!(
            (roots - want).abs() <= 1e-12 * want,
            "{steps:?} {family:?}: {roots}"
        );
        assert!(
            (quad - want).abs() <= 1e-10 * want,
            "{steps:?} {family:?}: {quad}"
        );
    }
}
