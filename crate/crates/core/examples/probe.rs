use cofactor::bimodule::*;
use cofactor::sparsify::*;
use cofactor::*;
use std::time::Instant;

fn main() {
    let vars = VariableTable::new(["a", "as", "ad", "ads", "b"]).unwrap();
    let gens: Vec<NcPoly> = [
        "a*b - 1", "b*a - 1", "a*ad*a - a", "ad*a*ad - ad",
        "ads*as - a*ad", "as*ads - ad*a",
    ].iter().map(|t| parse_poly(t, &vars).unwrap()).collect();
    let sys = GeneratorSystem::new(vars, gens).unwrap();
    let f = parse_poly("b - ad", sys.vars()).unwrap();
    let bound = SignatureBound::Degree(8);

    for (label, prune_on) in [("with prune", true), ("without prune", false)] {
        let t0 = Instant::now();
        let opts = PipelineOptions { prune_enabled: prune_on, ..Default::default() };
        let cert = sparsify_pipeline(&f, &sys, &bound, None, &opts).unwrap();
        println!(
            "{label}: l0={} l1={} flag={} basis before={} after={} rows={} cols={} nnz={} time={:?}",
            cert.l0_weight, cert.l1_weight, cert.l0_optimal_up_to_bound,
            cert.stats.basis_before_prune, cert.stats.basis_after_prune,
            cert.stats.matrix_rows, cert.stats.matrix_cols, cert.stats.matrix_nnz,
            t0.elapsed()
        );
        println!("  repr = {}", cert.representation.to_text(sys.vars()));
    }
}
