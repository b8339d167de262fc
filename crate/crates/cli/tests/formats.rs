use proptest::prelude::*;
use steepwater::{ArrowField, Connectivity, Geometry, Seed};
use steepwater_cli::arwf::{read_arwf, write_arwf};
use steepwater_cli::pnm::{read_pgm, read_ppm, write_pgm, write_ppm, Pgm, Ppm};
use steepwater_cli::seeds::{format_seed_csv, format_seed_list, parse_seed_csv, parse_seed_list};

fn connectivity() -> impl Strategy<Value = Connectivity> {
    prop::sample::select(Connectivity::ALL.to_vec())
}

fn pgm() -> impl Strategy<Value = Pgm> {
    (1usize..12, 1usize..12, 1u16..=u16::MAX).prop_flat_map(|(w, h, maxval)| {
        prop::collection::vec(0..=maxval, w * h)
            .prop_map(move |samples| Pgm::new(w, h, maxval, samples))
    })
}

fn arrows() -> impl Strategy<Value = ArrowField> {
    (1usize..10, 1usize..10, connectivity()).prop_flat_map(|(w, h, c)| {
        let geom = Geometry::new(w, h, c);
        prop::collection::vec(any::<u8>(), w * h).prop_map(move |raw| {
            let masks = raw
                .iter()
                .enumerate()
                .map(|(p, &m)| m & geom.in_bounds_mask(p))
                .collect();
            ArrowField::new(geom, masks).unwrap()
        })
    })
}

fn seeds() -> impl Strategy<Value = Vec<Seed>> {
    prop::collection::vec((0usize..1000, 0usize..1000, 1u32..), 0..20)
        .prop_map(|v| v.into_iter().map(|(x, y, l)| Seed::new(x, y, l)).collect())
}

proptest! {
    #[test]
    fn pgm_round_trip(image in pgm()) {
        prop_assert_eq!(read_pgm(&write_pgm(&image)).unwrap(), image);
    }

    #[test]
    fn ppm_round_trip(w in 1usize..10, h in 1usize..10, seed in any::<u64>()) {
        let pixels = (0..w * h)
            .map(|i| {
                let v = seed.wrapping_mul(i as u64 + 1).to_le_bytes();
                [v[0], v[3], v[6]]
            })
            .collect();
        let image = Ppm { width: w, height: h, pixels };
        prop_assert_eq!(read_ppm(&write_ppm(&image)).unwrap(), image);
    }

    #[test]
    fn arwf_round_trip(field in arrows()) {
        let bytes = write_arwf(&field);
        prop_assert_eq!(bytes.len(), 16 + field.masks().len());
        prop_assert_eq!(read_arwf(&bytes).unwrap(), field);
    }

    #[test]
    fn seed_list_round_trip(list in seeds()) {
        prop_assert_eq!(parse_seed_list(&format_seed_list(&list)).unwrap(), list.clone());
        prop_assert_eq!(parse_seed_csv(&format_seed_csv(&list)).unwrap(), list);
    }

    #[test]
    fn truncated_pgm_is_rejected(image in pgm(), cut in 1usize..4) {
        let bytes = write_pgm(&image);
        prop_assert!(read_pgm(&bytes[..bytes.len() - cut]).is_err());
    }
}

#[test]
fn square8_masks_round_trip_through_files() {
    let geom = Geometry::new(3, 3, Connectivity::Square8);
    for mask in 0..=255u8 {
        let mut masks = vec![0; 9];
        masks[4] = mask;
        let field = ArrowField::new(geom, masks).unwrap();
        assert_eq!(read_arwf(&write_arwf(&field)).unwrap().mask(4), mask);
    }
}
