// Circle and ray images as CSV and SVG.

use harmonic_maps::error::Result;
use harmonic_maps::plot::{render, OutputFormat, PlotSpec};

pub fn run_example() -> Result<()> {
    let mut spec = PlotSpec::new("F".parse()?, vec![2.0 - 3f64.sqrt(), 0.5]);
    spec.n_rays = 8;
    spec.output_format = OutputFormat::Csv;
    let csv = render(&spec, 64)?;
    for line in csv.lines().take(3) {
        println!("{line}");
    }
    println!("... {} rows", csv.lines().count() - 1);

    spec.output_format = OutputFormat::Svg;
    let svg = render(&spec, 64)?;
    let path = std::env::temp_dir().join("hmap_plot_images.svg");
    std::fs::write(&path, &svg)?;
    println!("wrote {} ({} bytes)", path.display(), svg.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
