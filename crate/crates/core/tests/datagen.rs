use fastpts::datagen::{
    all_benchmarks, gen_barrera_yohai, gen_mixed_contamination, load_benchmark, MixedSpec,
    SimSpec,
};
use fastpts::PtsError;
use sha2::{Digest, Sha256};

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn benchmark_checksums_are_pinned() {
    let pinned = [
        ("telephone", "39e07ac9f90300e86c0e1f111409062622a414c3d6db7a5699bbcb05f6388073"),
        ("stars", "14580e7de80742ed1dad36f08f3df687fcbe4c149b60e85b971d002c055908c9"),
        ("wood", "4ecac1e70076987ee38f91ad5100b837201cca1f39fbab32d1168082bdb1261c"),
        ("hawkins", "2b311f4f0fd28a92e1db678801ef64c05265bf9f613949e9cb8f5dffd2255d07"),
        ("hadi", "9e9e5334d318e610a37fb3168d1a9c36834d6cf9a642e912b76b3857ddbe97cf"),
    ];
    for (name, sum) in pinned {
        let csv = load_benchmark(name).unwrap().to_csv();
        assert_eq!(hex(&Sha256::digest(csv.as_bytes())), sum, "{name}");
    }
}

#[test]
fn benchmark_shapes_and_labels() {
    let t = load_benchmark("telephone").unwrap();
    assert_eq!((t.dataset.n(), t.dataset.p()), (24, 2));
    assert_eq!(t.true_outlier_labels(), (15..=20).collect::<Vec<_>>());
    // 1964 through 1969 were recorded in a different unit.
    assert_eq!(t.dataset.row(14), &[1.0, 64.0]);
    assert_eq!(t.dataset.y()[14], 11.9);
    let h = load_benchmark("hawkins").unwrap();
    assert_eq!((h.dataset.n(), h.dataset.p()), (75, 4));
    let s = load_benchmark("stars").unwrap();
    assert_eq!(s.dataset.n(), 47);
    assert_eq!(s.true_outlier_labels(), [11, 20, 30, 34]);
    assert_eq!(load_benchmark("wood").unwrap().dataset.p(), 6);
    assert_eq!(load_benchmark("hadi").unwrap().dataset.n(), 25);
    for case in all_benchmarks() {
        assert!(case.true_outliers.iter().all(|i| i < case.dataset.n()));
        assert!(case.has_intercept && case.dataset.has_intercept());
    }
    assert!(matches!(load_benchmark("nope"), Err(PtsError::UnknownName(_))));
}

#[test]
fn generators_are_pure() {
    let spec = SimSpec { seed: 3, ..SimSpec::new(40, 4, 0.1, 1.0) };
    for rep in 0..3 {
        assert_eq!(
            gen_barrera_yohai(&spec, rep).unwrap().dataset,
            gen_barrera_yohai(&spec, rep).unwrap().dataset
        );
        let m = MixedSpec::with_good_leverage();
        assert_eq!(
            gen_mixed_contamination(&m, 3, rep).unwrap().dataset,
            gen_mixed_contamination(&m, 3, rep).unwrap().dataset
        );
    }
}

#[test]
fn clean_rows_have_standard_normal_moments() {
    // Over 100 reps the pooled mean and variance of predictors and responses
    // should sit well within 5 standard errors of 0 and 1.
    let spec = SimSpec { seed: 11, ..SimSpec::new(100, 3, 0.1, 1.0) };
    let (mut sum, mut sq, mut cnt) = ([0.0; 3], [0.0; 3], 0.0);
    for rep in 0..100 {
        let s = gen_barrera_yohai(&spec, rep).unwrap();
        for i in s.contaminated.len()..100 {
            let vals = [s.dataset.row(i)[1], s.dataset.row(i)[2], s.dataset.y()[i]];
            for j in 0..3 {
                sum[j] += vals[j];
                sq[j] += vals[j] * vals[j];
            }
            cnt += 1.0;
        }
    }
    for j in 0..3 {
        let mean = sum[j] / cnt;
        let var = sq[j] / cnt - mean * mean;
        assert!(mean.abs() < 5.0 / cnt.sqrt(), "mean {mean}");
        assert!((var - 1.0).abs() < 5.0 * (2.0 / cnt).sqrt(), "var {var}");
    }
}

#[test]
fn mixed_design_counts() {
    for m in [MixedSpec::with_good_leverage(), MixedSpec::bad_leverage_only()] {
        let s = gen_mixed_contamination(&m, 0, 0).unwrap();
        assert_eq!(s.contaminated.len(), 16);
        assert_eq!(s.dataset.n(), 50);
    }
}
