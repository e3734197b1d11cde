use hardy_core::export::{fmt_sig15, quantize, read_catalog, write_catalog, Format};
use hardy_core::{scan_zeros, EvalConfig, ZeroCatalog, ZeroRecord};
use proptest::prelude::*;

fn write(cat: &ZeroCatalog, f: Format) -> Vec<u8> {
    let mut buf = Vec::new();
    write_catalog(&mut buf, cat, f).unwrap();
    buf
}

#[test]
fn scanned_catalog_round_trips() {
    let cat = scan_zeros(1.0, 60.0, 0.05, &EvalConfig::default()).unwrap();
    let json = write(&cat, Format::Json);
    assert_eq!(read_catalog(json.as_slice(), Format::Json).unwrap(), cat.records);
    assert!(String::from_utf8_lossy(&json).contains("\"schema_version\": 1"));

    for f in [Format::Csv, Format::Tsv] {
        let text = write(&cat, f);
        let back = read_catalog(text.as_slice(), f).unwrap();
        assert_eq!(back.len(), cat.records.len());
        for (a, b) in back.iter().zip(&cat.records) {
            assert_eq!((a.index, a.gamma.to_bits(), a.z_residual.to_bits()), (b.index, b.gamma.to_bits(), b.z_residual.to_bits()));
        }
        assert_eq!(write(&cat, f), text, "byte-identical rewrite");
    }
    let csv = String::from_utf8(write(&cat, Format::Csv)).unwrap();
    assert!(csv.starts_with("index,gamma,z_residual\n1,14.134725141"));
}

#[test]
fn bare_json_array_is_accepted() {
    let cat = scan_zeros(1.0, 30.0, 0.05, &EvalConfig::default()).unwrap();
    let bare = serde_json::to_string(&cat.records).unwrap();
    assert_eq!(read_catalog(bare.as_bytes(), Format::Json).unwrap(), cat.records);
}

fn arb_record() -> impl Strategy<Value = ZeroRecord> {
    (1usize..10_000, 1.0f64..1e4, 1e-12f64..1e-6).prop_map(|(index, g, r)| {
        let gamma = quantize(g);
        ZeroRecord {
            index,
            gamma,
            bracket_lo: quantize(g - 4e-10),
            bracket_hi: quantize(g + 4e-10),
            z_residual: quantize(r),
            assumed_multiplicity: 1,
        }
    })
}

proptest! {
    #[test]
    fn quantized_records_round_trip(records in prop::collection::vec(arb_record(), 0..20)) {
        let cat = ZeroCatalog { t_lo: 1.0, t_hi: 1e4, count_before: 0, records };
        let json = write(&cat, Format::Json);
        prop_assert_eq!(read_catalog(json.as_slice(), Format::Json).unwrap(), cat.records.clone());
        let csv = write(&cat, Format::Csv);
        let back = read_catalog(csv.as_slice(), Format::Csv).unwrap();
        for (a, b) in back.iter().zip(&cat.records) {
            prop_assert_eq!(a.gamma, b.gamma);
            prop_assert_eq!(a.z_residual, b.z_residual);
        }
    }

    #[test]
    fn sig15_text_parses_to_quantized_value(x in -1e12f64..1e12) {
        prop_assert_eq!(fmt_sig15(x).parse::<f64>().unwrap(), quantize(x));
    }
}
