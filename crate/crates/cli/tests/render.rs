//! Renderer behavior: golden files, determinism, and the text/SVG
//! interval-count agreement.
//!
//! To refresh the SVG golden after an intentional renderer change, run
//! `cargo test -p concept-homology-cli --test render -- --ignored` and
//! review the diff before committing.

use std::fs;
use std::path::PathBuf;

use concept_homology::{
    build_complex, compute_persistence, rips_filtration, Barcode, PointCloud,
};
use concept_homology_cli::{parse_filtration, render_barcode_svg, render_barcode_text, RenderError, RenderSpec};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn tetra_barcode() -> Barcode {
    let text = fs::read_to_string(fixture("tetra_filtration.csv")).unwrap();
    let k = build_complex(parse_filtration(&text).unwrap()).unwrap();
    compute_persistence(&k, 2).unwrap()
}

fn square_barcode() -> Barcode {
    let z = PointCloud::new(vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![0.0, 1.0],
        vec![1.0, 1.0],
    ])
    .unwrap();
    let k = rips_filtration(&z, 2.0, 2, "euclidean").unwrap();
    compute_persistence(&k, 2).unwrap()
}

fn empty_barcode() -> Barcode {
    compute_persistence(&build_complex(Vec::new()).unwrap(), 2).unwrap()
}

#[test]
fn text_output_matches_the_committed_golden() {
    let rendered = render_barcode_text(&tetra_barcode());
    let committed = fs::read_to_string(golden("tetra_barcode.txt")).unwrap();
    assert_eq!(rendered, committed);
}

#[test]
fn svg_output_matches_the_committed_golden() {
    let rendered = render_barcode_svg(&tetra_barcode(), &RenderSpec::default()).unwrap();
    let committed = fs::read_to_string(golden("tetra_barcode.svg")).unwrap();
    assert_eq!(rendered, committed);
}

#[test]
fn the_square_prints_its_diagonal_death() {
    let text = render_barcode_text(&square_barcode());
    assert!(text.contains("dim 1: [1.00000, 1.41421)"), "got:\n{text}");
}

#[test]
fn an_empty_barcode_renders_no_text() {
    assert_eq!(render_barcode_text(&empty_barcode()), "");
}

#[test]
fn an_empty_barcode_still_gets_axes() {
    let svg = render_barcode_svg(&empty_barcode(), &RenderSpec::default()).unwrap();
    assert!(svg.starts_with("<svg "));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("class=\"axis\""));
    assert_eq!(svg.matches("class=\"bar\"").count(), 0);
}

#[test]
fn bar_counts_agree_between_text_and_svg() {
    for barcode in [tetra_barcode(), square_barcode(), empty_barcode()] {
        let lines = render_barcode_text(&barcode).lines().count();
        let svg = render_barcode_svg(&barcode, &RenderSpec::default()).unwrap();
        assert_eq!(svg.matches("class=\"bar\"").count(), lines);
    }
}

#[test]
fn the_tetrahedron_draws_three_panels_and_eight_bars() {
    let svg = render_barcode_svg(&tetra_barcode(), &RenderSpec::default()).unwrap();
    assert_eq!(svg.matches("class=\"bar\"").count(), 8);
    for degree in 0..3 {
        assert!(svg.contains(&format!("data-degree=\"{degree}\"")));
    }
    assert_eq!(svg.matches("class=\"panel\"").count(), 3);
}

#[test]
fn infinite_intervals_get_arrowheads_when_asked() {
    let with = render_barcode_svg(&tetra_barcode(), &RenderSpec::default()).unwrap();
    assert_eq!(with.matches("class=\"arrow\"").count(), 2, "one per essential class");

    let spec = RenderSpec { infinite_marker: false, ..RenderSpec::default() };
    let without = render_barcode_svg(&tetra_barcode(), &spec).unwrap();
    assert_eq!(without.matches("class=\"arrow\"").count(), 0);
}

#[test]
fn explicit_panel_selection_restricts_the_drawing() {
    let spec = RenderSpec { degree_panels: vec![2], ..RenderSpec::default() };
    let svg = render_barcode_svg(&tetra_barcode(), &spec).unwrap();
    assert_eq!(svg.matches("class=\"panel\"").count(), 1);
    assert_eq!(svg.matches("class=\"bar\"").count(), 1);
}

#[test]
fn a_zero_canvas_is_rejected() {
    let flat = RenderSpec { width_px: 0, ..RenderSpec::default() };
    assert_eq!(
        render_barcode_svg(&tetra_barcode(), &flat),
        Err(RenderError::ZeroCanvas { width_px: 0, row_height_px: 18 })
    );
    let thin = RenderSpec { row_height_px: 0, ..RenderSpec::default() };
    assert!(render_barcode_svg(&tetra_barcode(), &thin).is_err());
}

#[test]
fn rendering_twice_gives_identical_bytes() {
    let a = render_barcode_svg(&square_barcode(), &RenderSpec::default()).unwrap();
    let b = render_barcode_svg(&square_barcode(), &RenderSpec::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
#[ignore = "writes tests/golden/tetra_barcode.svg; run deliberately and review the diff"]
fn regenerate_svg_golden() {
    let svg = render_barcode_svg(&tetra_barcode(), &RenderSpec::default()).unwrap();
    fs::write(golden("tetra_barcode.svg"), svg).unwrap();
}
