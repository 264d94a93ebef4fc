use std::io::Write;
use std::net::{Ipv4Addr, SocketAddr};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use rspace_cli::scenario::{solve_scenario, Scenario};
use rspace_cli::{exit_code, session, span, spaces_list, verify_bundle, EXIT_SCHEMA};

#[derive(Parser)]
#[command(name = "rspace", version, about = "Ramsey-space workbench at finite truncation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a scenario file and print the verdicts as JSON.
    Solve {
        file: String,
        /// Omit strategy trees from the output.
        #[arg(long)]
        summary: bool,
    },
    /// Run axiom checks on one space or on all of them.
    Verify {
        target: String,
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    Spaces {
        #[command(subcommand)]
        what: SpacesCmd,
    },
    /// Print the span of an approximation, e.g. `fin2:[{0:2},{1:1,2:2}]`.
    Span { elem: String },
    /// Serve the session API on localhost.
    Serve {
        #[arg(long, default_value_t = 8731)]
        port: u16,
    },
}

#[derive(Subcommand)]
enum SpacesCmd {
    List,
}

fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    // a closed pipe downstream is not an error here
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn run(cmd: Cmd) -> Result<(), (i32, String)> {
    let fail = |e: rspace::Error| (exit_code(&e), e.to_string());
    match cmd {
        Cmd::Solve { file, summary } => {
            let text = std::fs::read_to_string(&file).map_err(|e| (1, format!("{file}: {e}")))?;
            let sc = Scenario::from_json(&text).map_err(|e| (EXIT_SCHEMA, e.to_string()))?;
            print(&solve_scenario(&sc, !summary).map_err(fail)?);
        }
        Cmd::Verify { target, checks, seed, samples } => print(&verify_bundle(&target, &checks, seed, samples).map_err(fail)?),
        Cmd::Spaces { what: SpacesCmd::List } => print(&spaces_list()),
        Cmd::Span { elem } => print(&span(&elem).map_err(fail)?),
        Cmd::Serve { port } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| (1, e.to_string()))?;
            rt.block_on(async {
                let addr = SocketAddr::from((Ipv4Addr::LOCALHOST, port));
                let listener = tokio::net::TcpListener::bind(addr).await.map_err(|e| (1, format!("{addr}: {e}")))?;
                eprintln!("listening on http://{addr}");
                axum::serve(listener, session::router()).await.map_err(|e| (1, e.to_string()))
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
