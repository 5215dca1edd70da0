//! Welch and paired t-test reference values computed independently with
//! scipy.stats (ttest_ind with equal_var=False, ttest_rel).

pub struct Case {
    pub before: &'static [f64],
    pub after: &'static [f64],
    pub welch: (f64, f64, f64),
    pub paired: (f64, f64, f64),
}

pub const BEFORE_PCT: [f64; 7] = [46.9697, 56.25, 36.3636, 35.7143, 36.8421, 47.0588, 55.5556];
pub const AFTER_PCT: [f64; 7] = [80.0, 80.5556, 77.2727, 82.3529, 78.5714, 92.8571, 89.4737];

pub const CASES: [Case; 6] = [
    Case {
        before: &BEFORE_PCT,
        after: &AFTER_PCT,
        welch: (-9.453319508779114, 1.976514264456542e-06, 10.4028233667167),
        paired: (-12.539028228163437, 1.5740017764001596e-05, 6.0),
    },
    Case {
        before: &[1.0, 2.0, 3.0, 4.0, 5.0],
        after: &[2.0, 4.0, 6.0, 8.0, 10.5],
        welch: (-1.8831158916154396, 0.11105400259981621, 5.721820767028301),
        paired: (-3.9691432779197755, 0.016550539701028162, 4.0),
    },
    Case {
        before: &[0.12, 0.55, 0.31, 0.78, 0.44, 0.29],
        after: &[0.40, 0.61, 0.52, 0.90, 0.47, 0.58],
        welch: (-1.3992600911156574, 0.19418919257603842, 9.30108934978342),
        paired: (-3.62513350379734, 0.01513768548465283, 5.0),
    },
    Case {
        before: &[10.0, 12.5, 9.75, 11.0],
        after: &[14.0, 13.25, 15.5, 12.0],
        welch: (-2.9901245911203325, 0.025054789954732627, 5.854321350872167),
        paired: (-2.3764862365981028, 0.09792809846849591, 3.0),
    },
    Case {
        before: &[3.1, 2.9, 3.4, 3.0, 3.3, 2.8, 3.2, 3.05],
        after: &[3.0, 3.1, 3.5, 2.7, 3.6, 2.9, 3.3, 3.15],
        welch: (-0.48778415170439565, 0.6343626296765019, 12.183470911514943),
        paired: (-0.9571992303027348, 0.3703495525491358, 7.0),
    },
    Case {
        before: &[100.0, 101.0, 99.0],
        after: &[50.0, 51.0, 49.5],
        welch: (68.59530442729798, 6.144698360887412e-07, 3.740932642487047),
        paired: (299.00000000000006, 1.1185369536995922e-05, 2.0),
    },
];
