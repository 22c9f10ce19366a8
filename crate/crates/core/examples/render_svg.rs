//! Renders rhombus tilings as SVG files: the standard and anti-standard
//! cubillages of Z(4,2), plus the tiling one raising flip up with its
//! flipped capsid drawn bold and the natural order as arrows.
//!
//! Run with `cargo run --example render_svg`; writes into the current
//! directory.

use corteges::colorset::ColorSet;
use corteges::cubillage::{Cubillage, Filling, Side};
use corteges::emit::{tiling_svg, RenderOptions};
use corteges::zonotope::CyclicConfig;

fn main() -> std::io::Result<()> {
    let cfg = CyclicConfig::standard(4, 2).unwrap();
    let standard = Cubillage::extreme(&cfg, Side::Front).unwrap();
    let anti = Cubillage::extreme(&cfg, Side::Rear).unwrap();

    std::fs::write(
        "standard_4_2.svg",
        tiling_svg(&standard, &RenderOptions::default()),
    )?;
    std::fs::write("anti_4_2.svg", tiling_svg(&anti, &RenderOptions::default()))?;

    let packet = ColorSet::subsets_of_size(4, 3)
        .into_iter()
        .find(|&p| {
            let c = standard.capsid(p).unwrap();
            c.filling == Filling::Standard && c.is_dense()
        })
        .unwrap();
    let flipped = standard.capsid_flip(packet).unwrap();
    std::fs::write(
        "flipped_4_2.svg",
        tiling_svg(
            &flipped,
            &RenderOptions {
                bold_packet: Some(packet),
                arrows: true,
            },
        ),
    )?;

    println!("wrote standard_4_2.svg, anti_4_2.svg, flipped_4_2.svg");
    println!("bold capsid: packet {packet}");
    Ok(())
}
