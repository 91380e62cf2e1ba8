use std::fs;
use std::io::{self, BufReader};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use structedit_core::protocol::{self, Reply, Request};
use structedit_core::SessionService;

/// Structural editing for a small ML-family language.
#[derive(Debug, Parser)]
#[command(name = "structedit", version)]
struct Cli {
    #[command(subcommand)]
    mode: Mode,
}

#[derive(Debug, Subcommand)]
enum Mode {
    /// Run one operation on a file and print the reply message.
    Oneshot {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: OpName,
        /// Character offset of the cursor.
        #[arg(long)]
        cursor: usize,
        /// Name for the binding introduced by `extract`.
        #[arg(long, required_if_eq("op", "extract"))]
        name: Option<String>,
        #[arg(long, value_enum)]
        direction: Option<DirectionArg>,
        #[arg(long, value_enum)]
        target: Option<TargetArg>,
        /// Write the edited text back to the file.
        #[arg(long)]
        apply: bool,
    },
    /// Answer newline-delimited JSON requests until end of input.
    Serve {
        /// Listen on a Unix socket instead of standard input and output.
        #[arg(long)]
        socket: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OpName {
    Up,
    Down,
    Next,
    Prev,
    Transpose,
    Delete,
    Select,
    Move,
    Extract,
    Jump,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TargetArg {
    Binding,
    Parameter,
}

fn value_name(value: impl ValueEnum) -> String {
    value
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

const BUFFER: &str = "oneshot";

fn oneshot(
    file: &Path,
    op: OpName,
    cursor: usize,
    name: Option<String>,
    direction: Option<DirectionArg>,
    target: Option<TargetArg>,
    apply: bool,
) -> ExitCode {
    let text = match fs::read_to_string(file) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("structedit: cannot read {}: {err}", file.display());
            return ExitCode::from(1);
        }
    };
    let service = SessionService::new();
    service
        .open_buffer(BUFFER, &text)
        .expect("fresh service has no buffers");

    let mut request = Request::new(1, BUFFER, value_name(op), cursor);
    if let Some(name) = name {
        request = request.arg("name", name);
    }
    if let Some(direction) = direction {
        request = request.arg("direction", value_name(direction));
    }
    if let Some(target) = target {
        request = request.arg("target", value_name(target));
    }
    let reply = protocol::handle_request(&service, &request);
    println!("{}", reply.to_line());

    match reply {
        Reply::Success(_) => {
            if apply {
                let edited = service.buffer(BUFFER).expect("buffer was opened");
                if let Err(err) = fs::write(file, edited.text) {
                    eprintln!("structedit: cannot write {}: {err}", file.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Reply::Failure(_) => ExitCode::from(1),
    }
}

#[cfg(unix)]
fn serve_socket(service: Arc<SessionService>, path: &Path) -> io::Result<()> {
    use std::os::unix::net::UnixListener;

    let listener = UnixListener::bind(path)?;
    for stream in listener.incoming() {
        let stream = stream?;
        let service = Arc::clone(&service);
        std::thread::spawn(move || {
            let reader = match stream.try_clone() {
                Ok(s) => BufReader::new(s),
                Err(err) => {
                    eprintln!("structedit: {err}");
                    return;
                }
            };
            if let Err(err) = protocol::serve(&service, reader, stream) {
                eprintln!("structedit: connection closed: {err}");
            }
        });
    }
    Ok(())
}

#[cfg(not(unix))]
fn serve_socket(_service: Arc<SessionService>, _path: &Path) -> io::Result<()> {
    Err(io::Error::new(
        io::ErrorKind::Unsupported,
        "sockets are only supported on Unix",
    ))
}

fn serve(socket: Option<PathBuf>) -> ExitCode {
    let service = Arc::new(SessionService::new());
    let outcome = match socket {
        Some(path) => serve_socket(service, &path),
        None => protocol::serve(&service, io::stdin().lock(), io::stdout().lock()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("structedit: {err}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().mode {
        Mode::Oneshot {
            file,
            op,
            cursor,
            name,
            direction,
            target,
            apply,
        } => oneshot(&file, op, cursor, name, direction, target, apply),
        Mode::Serve { socket } => serve(socket),
    }
}
