use corrgauss::protocols::{
    coherent_info_asymptotic, direct_distribution, direct_eps_asymptotic, swap_distribution,
    swap_eps_asymptotic, ProtocolResult,
};
use corrgauss::{eb_threshold, scan, Activation, EnvironmentParams, Protocol, ScanSpec};
use serde_json::{json, Map, Value};

use crate::format::{round_json, sig};
use crate::{CliError, ConvergeArgs, PointArgs, ProtocolArg, ScanArgs};

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Text(String),
    Empty,
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Num(x) => sig(*x),
            Field::Text(s) => s.clone(),
            Field::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Num(x) => json!(x),
            Field::Text(s) => json!(s),
            Field::Empty => Value::Null,
        }
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<Option<f64>> for Field {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Field::Empty, Field::Num)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

/// A command result: a CSV table plus the JSON document mirroring it.
#[derive(Debug, Clone)]
pub struct Output {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
    pub json: Value,
}

impl Output {
    fn record(fields: Vec<(&'static str, Field)>) -> Self {
        let json = Value::Object(
            fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.json()))
                .collect::<Map<_, _>>(),
        );
        let (header, row) = fields.into_iter().unzip();
        Output {
            header,
            rows: vec![row],
            json,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Field::csv))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn to_json(&self) -> String {
        let mut json = self.json.clone();
        round_json(&mut json);
        let mut s = serde_json::to_string_pretty(&json).expect("serializable document");
        s.push('\n');
        s
    }
}

fn environment(
    tau: f64,
    omega: Option<f64>,
    g: f64,
    gp: f64,
) -> Result<EnvironmentParams, CliError> {
    let omega = match omega {
        Some(omega) => omega,
        None => eb_threshold(tau)?.omega,
    };
    let env = EnvironmentParams::new(tau, omega, g, gp)?;
    env.require_bona_fide()?;
    Ok(env)
}

fn finite(
    mu: f64,
    env: &EnvironmentParams,
    protocol: Protocol,
) -> Result<ProtocolResult, CliError> {
    Ok(match protocol {
        Protocol::Swap => swap_distribution(mu, env)?,
        _ => direct_distribution(mu, env)?,
    })
}

pub fn point(args: &PointArgs) -> Result<Output, CliError> {
    let env = environment(args.noise.tau, args.noise.omega, args.g, args.gp)?;
    let class = env.classify();
    let eb = env.eb_threshold();
    let direct = direct_eps_asymptotic(&env)?;
    let swap = swap_eps_asymptotic(&env)?;
    let mut fields: Vec<(&'static str, Field)> = vec![
        ("tau", env.tau().into()),
        ("omega", env.omega().into()),
        ("g", env.g().into()),
        ("gp", env.gp().into()),
        ("omega_eb", eb.omega.into()),
        ("env_class", class.separability.as_str().into()),
        ("env_pts", class.env_pts.into()),
        ("direct_eps", direct.into()),
        (
            "direct_activation",
            Activation::from_eps(direct).as_str().into(),
        ),
        (
            "direct_coherent_info",
            coherent_info_asymptotic(direct)?.into(),
        ),
        ("swap_eps", swap.into()),
        (
            "swap_activation",
            Activation::from_eps(swap).as_str().into(),
        ),
        ("swap_coherent_info", coherent_info_asymptotic(swap)?.into()),
    ];
    if let Some(mu) = args.mu {
        fields.push(("mu", mu.into()));
        for (name, protocol) in [("direct", Protocol::Direct), ("swap", Protocol::Swap)] {
            let r = finite(mu, &env, protocol)?;
            let [eps, delta, ci] = match name {
                "direct" => [
                    "direct_eps_finite",
                    "direct_eps_rel_delta",
                    "direct_coherent_info_finite",
                ],
                _ => [
                    "swap_eps_finite",
                    "swap_eps_rel_delta",
                    "swap_coherent_info_finite",
                ],
            };
            fields.push((eps, r.report.pts_min.into()));
            fields.push((delta, r.relative_error().into()));
            fields.push((ci, r.report.coherent_info.into()));
        }
    }
    Ok(Output::record(fields))
}

pub fn scan_grid(args: &ScanArgs) -> Result<Output, CliError> {
    let mode = args.noise.omega_mode();
    let protocol: Protocol = args.protocol.into();
    let window = ScanSpec::with_default_window(args.noise.tau, mode, protocol, args.resolution)?;
    let spec = ScanSpec::new(
        args.noise.tau,
        mode,
        protocol,
        args.g_range.unwrap_or(window.g_range()),
        args.gp_range.unwrap_or(window.gp_range()),
        args.resolution,
    )?;
    let grid = match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.get())
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?
            .install(|| scan(&spec)),
        None => scan(&spec),
    };
    let rows = grid
        .iter()
        .map(|(g, gp, c)| {
            vec![
                g.into(),
                gp.into(),
                c.env_class.as_str().into(),
                c.activation.as_str().into(),
                c.eps_value.into(),
            ]
        })
        .collect();
    let json = serde_json::to_value(&grid).expect("grid is serializable");
    Ok(Output {
        header: vec!["g", "gp", "env_class", "activation", "eps"],
        rows,
        json,
    })
}

pub fn converge(args: &ConvergeArgs) -> Result<Output, CliError> {
    let protocol = match args.protocol {
        ProtocolArg::Environment => {
            return Err(CliError::Usage(
                "converge needs --protocol direct or swap".into(),
            ));
        }
        p => Protocol::from(p),
    };
    if args.mu.is_empty() {
        return Err(CliError::Usage("empty --mu list".into()));
    }
    let env = environment(args.noise.tau, args.noise.omega, args.g, args.gp)?;
    let mut rows = Vec::with_capacity(args.mu.len());
    let mut json_rows = Vec::with_capacity(args.mu.len());
    for &mu in &args.mu {
        let r = finite(mu, &env, protocol)?;
        let row: Vec<Field> = vec![
            mu.into(),
            r.report.pts_min.into(),
            r.asymptotic_eps.into(),
            r.relative_error().into(),
        ];
        json_rows.push(json!({
            "mu": mu,
            "eps_finite": r.report.pts_min,
            "eps_asymptotic": r.asymptotic_eps,
            "rel_error": r.relative_error(),
        }));
        rows.push(row);
    }
    let json = json!({
        "tau": env.tau(),
        "omega": env.omega(),
        "g": env.g(),
        "gp": env.gp(),
        "protocol": protocol.as_str(),
        "rows": json_rows,
    });
    Ok(Output {
        header: vec!["mu", "eps_finite", "eps_asymptotic", "rel_error"],
        rows,
        json,
    })
}
