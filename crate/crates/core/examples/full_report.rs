//! Every check at once, as `grifcalc report` runs it (ker μ at 6 variables
//! to keep it quick).

use grifcalc::cli::report::{full_report, ReportOptions};

fn main() {
    let opts = ReportOptions { kermu_vars: 6, ..ReportOptions::default() };
    let doc = full_report(&opts);
    print!("{}", doc.render_text());
    std::process::exit(i32::from(doc.failed()));
}
