use anyhow::{anyhow, Result};
use slopesmith::laurent::rational::parse_rational;
use slopesmith::obstruction::{cyclic_verdict, diameter_verdict};

use crate::report::Report;
use crate::Globals;

#[derive(clap::Subcommand, Debug)]
pub enum Args {
    /// Cyclic-surgery argument for the curve with ratio constant C.
    Cyclic {
        /// Nonzero rational, e.g. 2 or -3/5.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Slope-diameter argument for coprime 0 < p < q.
    Diameter {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
}

pub fn run(args: &Args, g: &Globals) -> Result<Report> {
    let (name, report) = match args {
        Args::Cyclic { c } => {
            let c = parse_rational(c).ok_or_else(|| anyhow!("--c: {c:?} is not a rational number"))?;
            ("obstruct cyclic", cyclic_verdict(&c, g.bound)?)
        }
        Args::Diameter { p, q } => ("obstruct diameter", diameter_verdict(*p, *q)?),
    };
    let code = report.verdict.exit_code() as u8;
    Report::new(name, report.to_text(), &report, code)
}
