use laplace_gof::alternatives::AlternativeSpec;
use laplace_gof::engine::{calibrate, decide, mc_pvalue};
use laplace_gof::rng::stream;
use laplace_gof::{estimate, Sample, TestId};

fn main() -> Result<(), laplace_gof::Error> {
    let mut rng = stream(42, "quickstart", 0);
    let xs = AlternativeSpec::GED { k: 2.0 }.draws(100, &mut rng);
    let sample = Sample::new(xs)?;
    let est = estimate(&sample)?;
    println!("mu_hat = {:.4}, sigma_hat = {:.4}", est.mu_ml, est.sigma_ml);

    for name in ["AD", "DLO_Z", "CK_v"] {
        let test: TestId = name.parse()?;
        let stat = test.statistic(&sample)?;
        let region = calibrate(test, sample.len(), 0.05, 20_000, 7)?;
        let p = mc_pvalue(test, sample.len(), stat, 20_000, 7)?;
        println!("{name:6} statistic {stat:9.4}  reject at 5%: {:5}  p = {p:.4}", decide(&region, stat));
    }
    Ok(())
}
