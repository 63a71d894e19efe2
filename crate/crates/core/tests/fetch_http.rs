//! fetch_dataset against a local HTTP server serving synthetic TU archives.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Cursor, Write};
use std::net::TcpListener;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;

use wlvc::dataset::{fetch_dataset, network_requests, parse_tud, CacheConfig, CHECKSUM_FILE};
use wlvc::wl::{wl1_refine, Iterations};
use wlvc::Error;

type Routes = HashMap<String, Vec<(u16, Vec<u8>)>>;

/// Serves each path's responses in order, repeating the last one.
struct Server {
    url: String,
    hits: Arc<AtomicUsize>,
}

fn serve(routes: Routes) -> Server {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}", listener.local_addr().unwrap());
    let hits = Arc::new(AtomicUsize::new(0));
    let counter = hits.clone();
    let routes = Arc::new(Mutex::new(routes));
    thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            let mut line = String::new();
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            if reader.read_line(&mut line).is_err() {
                continue;
            }
            loop {
                let mut h = String::new();
                if reader.read_line(&mut h).map_or(true, |n| n == 0) || h == "\r\n" {
                    break;
                }
            }
            counter.fetch_add(1, Ordering::SeqCst);
            let path = line.split_whitespace().nth(1).unwrap_or("/").to_owned();
            let (status, body) = {
                let mut routes = routes.lock().unwrap();
                match routes.get_mut(&path) {
                    Some(queue) if queue.len() > 1 => queue.remove(0),
                    Some(queue) => queue[0].clone(),
                    None => (404, b"not found".to_vec()),
                }
            };
            let head = format!("HTTP/1.1 {status} X\r\nContent-Length: {}\r\nConnection: close\r\n\r\n", body.len());
            let _ = stream.write_all(head.as_bytes());
            let _ = stream.write_all(&body);
        }
    });
    Server { url, hits }
}

fn tu_zip(name: &str) -> Vec<u8> {
    let mut w = zip::ZipWriter::new(Cursor::new(Vec::new()));
    let opts = zip::write::SimpleFileOptions::default();
    let files = [
        ("A", "1, 2\n2, 1\n2, 3\n3, 1\n4, 5\n5, 6\n6, 4\n7, 8\n8, 9\n"),
        ("graph_indicator", "1\n1\n1\n2\n2\n2\n3\n3\n3\n"),
        ("node_labels", "1\n1\n1\n1\n1\n1\n1\n1\n1\n"),
        ("graph_labels", "1\n2\n1\n"),
    ];
    for (suffix, body) in files {
        w.start_file(format!("{name}/{name}_{suffix}.txt"), opts).unwrap();
        w.write_all(body.as_bytes()).unwrap();
    }
    w.start_file(format!("{name}/README.txt"), opts).unwrap();
    w.write_all(b"synthetic").unwrap();
    w.finish().unwrap().into_inner()
}

fn config(root: &std::path::Path, url: &str) -> CacheConfig {
    CacheConfig { root: root.into(), base_url: url.into(), timeout_secs: 10, offline: false, retries: 3 }
}

#[test]
fn cold_fetch_parses_and_warm_fetch_is_offline() {
    let server = serve(HashMap::from([("/TOY.zip".to_owned(), vec![(200, tu_zip("TOY"))])]));
    let cache = tempfile::tempdir().unwrap();
    let cfg = config(cache.path(), &server.url);

    let path = fetch_dataset("TOY", &cfg).unwrap();
    assert_eq!(server.hits.load(Ordering::SeqCst), 1);
    let sum = std::fs::read_to_string(path.join(CHECKSUM_FILE)).unwrap();
    assert_eq!(sum.split_whitespace().next().unwrap().len(), 64);

    let ds = parse_tud(&path).unwrap();
    assert_eq!(ds.graphs.len(), 3);
    assert_eq!(ds.vertex_count(), 9);
    assert_eq!(ds.graph_labels, vec![1, 2, 1]);
    // K3, K3, P3 under one dictionary: 1 histogram by order, then 2
    let run = wl1_refine(&ds.graphs, Iterations::Fixed(2), false);
    assert_eq!((0..=2).map(|t| run.distinct_histograms(t)).collect::<Vec<_>>(), vec![1, 2, 2]);

    let before = network_requests();
    let again = fetch_dataset("TOY", &CacheConfig { offline: true, ..cfg.clone() }).unwrap();
    assert_eq!(again, path);
    assert_eq!(network_requests(), before);
    assert_eq!(server.hits.load(Ordering::SeqCst), 1);
}

#[test]
fn unknown_name_and_corrupt_archive() {
    let server = serve(HashMap::from([("/BAD.zip".to_owned(), vec![(200, b"PK\x03\x04 not really".to_vec())])]));
    let cache = tempfile::tempdir().unwrap();
    let cfg = config(cache.path(), &server.url);
    assert!(matches!(fetch_dataset("MISSING", &cfg), Err(Error::UnknownDataset(n)) if n == "MISSING"));
    assert!(matches!(fetch_dataset("BAD", &cfg), Err(Error::CorruptArchive(_))));
    // nothing half-written is left behind
    assert!(!cache.path().join("BAD").exists());
    let leftovers: Vec<_> = std::fs::read_dir(cache.path()).unwrap().collect();
    assert!(leftovers.is_empty(), "{leftovers:?}");
}

#[test]
fn archive_without_tu_files_is_corrupt() {
    let mut w = zip::ZipWriter::new(Cursor::new(Vec::new()));
    w.start_file("EMPTY/readme.txt", zip::write::SimpleFileOptions::default()).unwrap();
    let bytes = w.finish().unwrap().into_inner();
    let server = serve(HashMap::from([("/EMPTY.zip".to_owned(), vec![(200, bytes)])]));
    let cache = tempfile::tempdir().unwrap();
    assert!(matches!(fetch_dataset("EMPTY", &config(cache.path(), &server.url)), Err(Error::CorruptArchive(_))));
}

#[test]
fn server_errors_are_retried() {
    let server = serve(HashMap::from([(
        "/FLAKY.zip".to_owned(),
        vec![(503, vec![]), (503, vec![]), (200, tu_zip("FLAKY"))],
    )]));
    let cache = tempfile::tempdir().unwrap();
    let path = fetch_dataset("FLAKY", &config(cache.path(), &server.url)).unwrap();
    assert_eq!(server.hits.load(Ordering::SeqCst), 3);
    assert_eq!(parse_tud(&path).unwrap().graphs.len(), 3);

    let down = serve(HashMap::from([("/DOWN.zip".to_owned(), vec![(503, vec![])])]));
    let err = fetch_dataset("DOWN", &CacheConfig { retries: 2, ..config(cache.path(), &down.url) }).unwrap_err();
    assert!(matches!(err, Error::Http { .. }));
    assert_eq!(err.exit_code(), 3);
    assert_eq!(down.hits.load(Ordering::SeqCst), 2);
}

#[test]
fn concurrent_fetches_download_once() {
    let server = serve(HashMap::from([("/SAME.zip".to_owned(), vec![(200, tu_zip("SAME"))])]));
    let cache = tempfile::tempdir().unwrap();
    let cfg = config(cache.path(), &server.url);
    let paths: Vec<_> = (0..4)
        .map(|_| {
            let cfg = cfg.clone();
            thread::spawn(move || fetch_dataset("SAME", &cfg).unwrap())
        })
        .collect::<Vec<_>>()
        .into_iter()
        .map(|h| h.join().unwrap())
        .collect();
    assert!(paths.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(server.hits.load(Ordering::SeqCst), 1);
}
