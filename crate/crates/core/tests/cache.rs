use motivic_ext::ext::{Calculator, Window};
use motivic_ext::fplinalg::FpMatrix;
use motivic_ext::steenrod::Side;
use motivic_ext::store::{decode_matrix, emit_chart, encode_matrix, CacheKey, CacheKind, ChartDocument, ChartFormat, Store};
use motivic_ext::Tridegree;
use proptest::prelude::*;

fn window() -> Window {
    Window::new(3, 12, -8, 8)
}

#[test]
fn cold_and_warm_charts_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cold = Calculator::new(3, 12).unwrap().with_store(Store::new(dir.path()));
    let first = cold.comparison_chart(&window()).unwrap();
    let warm = Calculator::new(3, 12).unwrap().with_store(Store::new(dir.path()));
    let second = warm.comparison_chart(&window()).unwrap();
    let plain = Calculator::new(3, 12).unwrap().comparison_chart(&window()).unwrap();
    assert_eq!(first, second);
    assert_eq!(first, plain);
    for format in [ChartFormat::Ascii, ChartFormat::Svg, ChartFormat::Json] {
        assert_eq!(emit_chart(&first, format), emit_chart(&second, format));
    }
    let key = CacheKey::new(Side::Real, 3, CacheKind::ExtCell, Tridegree::new(1, 1, 0));
    assert!(dir.path().join("1/real/3/ext_cell/1_1_0.dat").exists());
    assert!(Store::new(dir.path()).get(&key).is_some());
}

#[test]
fn corrupt_cell_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let store = Store::new(dir.path());
    let t = Tridegree::new(1, 1, 0);
    let calc = Calculator::new(3, 4).unwrap().with_store(store.clone());
    let cell = calc.ext_cell(Side::Real, t).unwrap();
    let path = store.path(&CacheKey::new(Side::Real, 3, CacheKind::ExtCell, t));
    std::fs::write(&path, "not a payload\n").unwrap();
    assert_eq!(calc.ext_cell(Side::Real, t).unwrap(), cell);
}

#[test]
fn chart_json_roundtrip_and_formats_agree() {
    let chart = Calculator::new(3, 12).unwrap().comparison_chart(&window()).unwrap();
    let doc = ChartDocument::from_chart(&chart);
    let back = ChartDocument::from_json(&doc.to_json()).unwrap();
    assert_eq!(back, doc);
    let dims = back.dimensions();
    for (t, cell) in &chart.cells {
        assert_eq!(dims[t], cell.dimension);
    }
    // every nonzero cell appears as a digit in the ascii page and a dot in the svg
    let svg = doc.to_svg();
    let dots = svg.matches("<circle").count();
    assert_eq!(dots, chart.nonzero_cells().count());
}

#[test]
fn single_dot_position() {
    let chart = Calculator::new(3, 1).unwrap().chart(Side::Real, &Window::new(1, 1, 0, 0)).unwrap();
    let svg = emit_chart(&chart, ChartFormat::Svg);
    assert!(svg.contains("data-weight=\"0\""));
    assert!(svg.contains("data-x=\"0\" data-y=\"1\""));
    let ascii = emit_chart(&chart, ChartFormat::Ascii);
    assert!(ascii.contains("weight 0"));
}

proptest! {
    #[test]
    fn matrix_payload_roundtrip(
        p in prop_oneof![Just(3u32), Just(5), Just(7)],
        rows in 0usize..6,
        cols in 0usize..6,
        entries in prop::collection::vec((0u32..6, 0u32..6, -20i64..20), 0..20),
        f in 0u32..5, m in -10i64..10, n in -10i64..10,
    ) {
        let entries: Vec<_> = entries.into_iter().filter(|e| (e.0 as usize) < rows && (e.1 as usize) < cols).collect();
        let mat = FpMatrix::from_triplets(p, rows, cols, entries).unwrap();
        let key = CacheKey { p, ..CacheKey::new(Side::C2, p, CacheKind::Comparison, Tridegree::new(f, m, n)) };
        let payload = encode_matrix(&key, &mat);
        prop_assert_eq!(decode_matrix(&key, &payload).unwrap(), mat.clone());
        prop_assert_eq!(encode_matrix(&key, &mat), payload);
    }
}
