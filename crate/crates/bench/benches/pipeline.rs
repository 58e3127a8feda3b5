use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use wmha::coalg::{compute_e, verify_wmha};
use wmha::exactla::generalized_inverse;
use wmha::fdalg::MultiplierAlgebra;
use wmha::groupoid::{preset, GroupoidModel, ModelKind};
use wmha::report::{sample_infinite, verify, Options, PathChoice, Subject};
use wmha::{Matrix, Scalar};

fn model(name: &str, kind: ModelKind) -> GroupoidModel {
    GroupoidModel::build(kind, &preset(name).unwrap().finite().unwrap())
}

fn canonical_idempotent(c: &mut Criterion) {
    let mut g = c.benchmark_group("compute_e");
    for name in ["pair:2", "pair:3", "bundle:cyclic:2:3"] {
        let m = model(name, ModelKind::Convolution);
        let ma = MultiplierAlgebra::new(m.coproduct.algebra()).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(name), &m, |b, m| {
            b.iter(|| compute_e(black_box(&m.coproduct), &ma).unwrap())
        });
    }
    g.finish();
}

fn axioms(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_wmha");
    for name in ["pair:2", "pair:3"] {
        for kind in [ModelKind::Function, ModelKind::Convolution] {
            let m = model(name, kind);
            g.bench_with_input(BenchmarkId::new(kind.as_str(), name), &m, |b, m| {
                b.iter(|| verify_wmha(black_box(&m.coproduct)))
            });
        }
    }
    g.finish();
}

fn full_report(c: &mut Criterion) {
    let mut g = c.benchmark_group("report");
    g.sample_size(10);
    for path in [PathChoice::Def114, PathChoice::Thm29, PathChoice::Both] {
        let subject = Subject::from_preset("pair:3", ModelKind::Convolution).unwrap();
        let opts = Options {
            path,
            ..Default::default()
        };
        g.bench_function(BenchmarkId::new("pair:3", path), |b| {
            b.iter(|| verify(black_box(&subject), "sha256:0", &opts))
        });
    }
    let lazy = preset("bundle:cyclic:2:inf").unwrap().lazy().unwrap();
    g.bench_function("bundle:cyclic:2:inf/3 windows", |b| {
        b.iter(|| sample_infinite(black_box(&lazy), ModelKind::Convolution, 3, 0))
    });
    g.finish();
}

fn ginv(c: &mut Criterion) {
    // Rank-deficient t with orthogonal projections onto image and coimage.
    let n = 12;
    let t = Matrix::from_fn(n, n, |r, col| Scalar::from_int(((r * col) % 3) as i64));
    let (_, img, ker) = t.rank_image_kernel();
    let proj = |basis: &Matrix| {
        let gram = basis.conj().transpose().mul(basis);
        basis.mul(&gram.inverse().unwrap()).mul(&basis.conj().transpose())
    };
    let e = proj(&img.to_matrix());
    let f = Matrix::identity(n).sub(&proj(&ker.to_matrix()));
    c.bench_function("generalized_inverse/12x12", |b| {
        b.iter(|| generalized_inverse(black_box(&t), &e, &f).unwrap())
    });
}

criterion_group!(benches, canonical_idempotent, axioms, full_report, ginv);
criterion_main!(benches);
