//! Reading, editing and writing the network file format.
//!
//! ```bash
//! cargo run -p dcr --example network_file
//! ```

use dcr::{parse_network, write_network, ParseError, SystemState};

const TEXT: &str = "\
# two routes between 0 and 3
d 2
s 0
t 3
e 0 0 1 0.9
e 1 1 3 0.8
e 2 0 2 0.7
e 3 2 3 0.6
e 4 1 2 0.3
";

fn main() -> Result<(), ParseError> {
    let net = parse_network(TEXT)?;
    println!(
        "{} nodes, {} links, d = {}",
        net.nodes().len(),
        net.link_count(),
        net.diameter()
    );

    let cut = net.delete_link(1).unwrap().make_perfect(2).unwrap();
    let written = write_network(&cut);
    print!("{written}");
    assert_eq!(parse_network(&written)?.links(), cut.links());

    let state = SystemState::all_up(&cut).with(3, false);
    println!("phi with link 3 down: {}", cut.phi(&state).unwrap());

    match parse_network("s 0\nt 1\nd 1\ne 0 0 1 1.5\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
