//! Sweep the Werner family and print the PPT minimum eigenvalue, the
//! indicator from both decomposition routes and the resulting verdict.

use hermsep::decompose::DimProfile;
use hermsep::indicator::{analyze, AnalyzeOptions, Method};
use hermsep::states::werner;

fn main() -> hermsep::Result<()> {
    let profile = DimProfile::bipartite(2, 2)?;
    println!("{:>5} {:>10} {:>10} {:>10}  verdict", "f", "ppt_min", "q_elem", "q_svd");
    for k in 0..=10 {
        let f = k as f64 / 10.0;
        let w = werner(f)?;
        let elem = analyze(&w, &profile, &AnalyzeOptions::default())?;
        let svd = analyze(&w, &profile, &AnalyzeOptions { method: Method::Svd, ..Default::default() })?;
        println!(
            "{f:>5.2} {:>10.4} {:>10.4} {:>10.4}  {:?}",
            elem.ppt_min_eig,
            elem.q,
            svd.q,
            elem.verdict.expect("density input")
        );
    }
    Ok(())
}
