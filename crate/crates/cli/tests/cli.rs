mod common;

use common::{code, listing, path_str, read_labels, steepwater, write_gray};
use steepwater::{Connectivity, GridImage};
use steepwater_cli::arwf::read_arwf;
use steepwater_cli::pnm::{read_pgm, read_ppm};
use steepwater_cli::CliError;

const RAMP: [u8; 12] = [3, 2, 3, 5, 1, 0, 4, 6, 2, 3, 7, 1];

#[test]
fn watershed_writes_labels_and_arrows() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    write_gray(&input, 4, &RAMP);
    let labels = dir.path().join("labels.pgm");
    let arrows = dir.path().join("arrows.arwf");
    let out = steepwater(
        &[
            "watershed",
            path_str(&input),
            "--connectivity",
            "square4",
            "-o",
            path_str(&labels),
            "--arrows",
            path_str(&arrows),
        ],
        None,
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let img = GridImage::new(4, 3, RAMP.to_vec(), Connectivity::Square4).unwrap();
    let expected = steepwater::watershed(&img).unwrap();
    assert_eq!(read_labels(&labels), expected.labels.labels());
    assert_eq!(
        read_arwf(&std::fs::read(&arrows).unwrap()).unwrap(),
        expected.arrows
    );
}

#[test]
fn renderings_have_image_size() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    write_gray(&input, 4, &RAMP);
    let p = |n: &str| dir.path().join(n);
    let out = steepwater(
        &[
            "watershed",
            path_str(&input),
            "-c",
            "hex6",
            "-o",
            path_str(&p("l.pgm")),
            "--arrows-ppm",
            path_str(&p("a.ppm")),
            "--labels-ppm",
            path_str(&p("l.ppm")),
            "--mosaic",
            path_str(&p("m.pgm")),
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    for name in ["a.ppm", "l.ppm"] {
        let ppm = read_ppm(&std::fs::read(p(name)).unwrap()).unwrap();
        assert_eq!((ppm.width, ppm.height), (4, 3));
    }
    let mosaic = read_pgm(&std::fs::read(p("m.pgm")).unwrap()).unwrap();
    assert_eq!(mosaic.maxval, 255);
    let labels = read_labels(&p("l.pgm"));
    for (i, &l) in labels.iter().enumerate() {
        let members: Vec<u16> = (0..12)
            .filter(|&j| labels[j] == l)
            .map(|j| RAMP[j] as u16)
            .collect();
        let n = members.len() as u32;
        let sum: u32 = members.iter().map(|&v| v as u32).sum();
        assert_eq!(mosaic.samples[i] as u32, (2 * sum + n) / (2 * n));
    }
}

#[test]
fn malformed_magic_is_a_format_error_with_no_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    std::fs::write(&input, b"P2\n2 1\n255\n0 1\n").unwrap();
    let out = steepwater(
        &[
            "watershed",
            path_str(&input),
            "-o",
            path_str(&dir.path().join("labels.pgm")),
            "--arrows",
            path_str(&dir.path().join("arrows.arwf")),
        ],
        None,
    );
    assert_eq!(code(&out), CliError::EXIT_FORMAT);
    assert_eq!(listing(dir.path()), vec!["in.pgm"]);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().count(), 1, "{stderr}");
}

#[test]
fn each_failure_has_its_own_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    write_gray(&input, 4, &RAMP);
    let output = dir.path().join("o.pgm");
    let missing = dir.path().join("missing.pgm");

    let io = steepwater(
        &["watershed", path_str(&missing), "-o", path_str(&output)],
        None,
    );
    assert_eq!(code(&io), CliError::EXIT_IO);

    let conn = steepwater(
        &[
            "watershed",
            path_str(&input),
            "-c",
            "tri3",
            "-o",
            path_str(&output),
        ],
        None,
    );
    assert_eq!(code(&conn), CliError::EXIT_CONNECTIVITY);

    let arrows = dir.path().join("a.arwf");
    let ok = steepwater(
        &[
            "watershed",
            path_str(&input),
            "-o",
            path_str(&output),
            "--arrows",
            path_str(&arrows),
        ],
        None,
    );
    assert_eq!(code(&ok), 0);
    std::fs::remove_file(&output).unwrap();
    let bad_seed = steepwater(
        &[
            "trace",
            "--arrows",
            path_str(&arrows),
            "--seeds",
            "9,9,1",
            "-o",
            path_str(&output),
        ],
        None,
    );
    assert_eq!(code(&bad_seed), CliError::EXIT_INVALID);
    assert!(!output.exists());

    let usage = steepwater(&["watershed"], None);
    assert_eq!(code(&usage), 2);

    let threads = steepwater(
        &["watershed", path_str(&input), "-o", path_str(&output)],
        None,
    );
    assert_eq!(code(&threads), 0);
    let mut cmd = std::process::Command::new(common::BIN);
    let bad_threads = cmd
        .args(["watershed", path_str(&input), "-o", path_str(&output)])
        .env("STEEPWATER_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&bad_threads), CliError::EXIT_INVALID);
}

#[test]
fn trace_follows_written_arrows() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    write_gray(&input, 5, &[9, 8, 7, 6, 5]);
    let arrows = dir.path().join("a.arwf");
    let labels = dir.path().join("l.pgm");
    assert_eq!(
        code(&steepwater(
            &[
                "watershed",
                path_str(&input),
                "-o",
                path_str(&labels),
                "--arrows",
                path_str(&arrows)
            ],
            None
        )),
        0
    );
    let traced = dir.path().join("t.pgm");
    let overlay = dir.path().join("t.ppm");
    let out = steepwater(
        &[
            "trace",
            "--arrows",
            path_str(&arrows),
            "--seeds",
            "1,0,4",
            "--image",
            path_str(&input),
            "--overlay",
            path_str(&overlay),
            "-o",
            path_str(&traced),
        ],
        None,
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(read_labels(&traced), vec![0, 4, 4, 4, 4]);
    let ppm = read_ppm(&std::fs::read(&overlay).unwrap()).unwrap();
    assert_eq!(ppm.pixels[0], [9, 9, 9]);

    let seeds = dir.path().join("seeds.csv");
    std::fs::write(&seeds, "# x,y,label\n0,0,2\n").unwrap();
    let out = steepwater(
        &[
            "trace",
            "--arrows",
            path_str(&arrows),
            "--seeds-file",
            path_str(&seeds),
            "-o",
            path_str(&traced),
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    assert_eq!(read_labels(&traced), vec![2; 5]);
}

#[test]
fn flood_from_csv_and_raster_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    write_gray(&input, 5, &[0, 1, 2, 1, 0]);
    let output = dir.path().join("o.pgm");
    let out = steepwater(&["flood", path_str(&input), "-o", path_str(&output)], None);
    assert_eq!(code(&out), 0);
    assert_eq!(read_labels(&output), vec![1, 1, 1, 2, 2]);

    let csv = dir.path().join("s.csv");
    std::fs::write(&csv, "4,0,7\n").unwrap();
    let out = steepwater(
        &[
            "flood",
            path_str(&input),
            "--seeds",
            path_str(&csv),
            "-o",
            path_str(&output),
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    assert_eq!(read_labels(&output), vec![7; 5]);

    let raster = dir.path().join("s.pgm");
    write_gray(&raster, 5, &[3, 0, 0, 0, 0]);
    let out = steepwater(
        &[
            "flood",
            path_str(&input),
            "--seeds",
            path_str(&raster),
            "-o",
            path_str(&output),
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    assert_eq!(read_labels(&output), vec![3; 5]);
}

#[test]
fn fillpits_keeps_input_depth() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.pgm");
    #[rustfmt::skip]
    write_gray(&input, 3, &[
        5, 5, 5,
        5, 1, 5,
        5, 5, 0,
    ]);
    let output = dir.path().join("o.pgm");
    assert_eq!(
        code(&steepwater(
            &["fillpits", path_str(&input), "-o", path_str(&output)],
            None
        )),
        0
    );
    let filled = read_pgm(&std::fs::read(&output).unwrap()).unwrap();
    assert_eq!(filled.maxval, 255);
    assert_eq!(filled.samples, vec![5, 5, 5, 5, 5, 5, 5, 5, 0]);
}

#[test]
fn graph_watershed_text_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("g.txt");
    std::fs::write(&input, "nodes 4 edges 3\n3\n2\n1\n0\n0 1\n1 2\n2 3\n").unwrap();
    let output = dir.path().join("l.txt");
    let out = steepwater(
        &["graph-watershed", path_str(&input), "-o", path_str(&output)],
        None,
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(
        std::fs::read_to_string(&output).unwrap(),
        "0 1\n1 1\n2 1\n3 1\n"
    );

    std::fs::write(&input, "nodes 2 edges 1\n3\n").unwrap();
    let out = steepwater(
        &["graph-watershed", path_str(&input), "-o", path_str(&output)],
        None,
    );
    assert_eq!(code(&out), CliError::EXIT_FORMAT);
}
