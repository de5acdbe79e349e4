"""PGM parsing/writing, tiling, and dataset scanning."""

import numpy as np
import pytest

from texturekit.imageio import PgmError, load_pgm, save_pgm, scan_dataset, tile


def write(path, data):
    path.write_bytes(data)
    return path


def test_p2_parse(tmp_path):
    p = write(tmp_path / "a.pgm", b"P2\n2 2\n255\n0 255 128 7\n")
    img = load_pgm(p)
    assert img.dtype == np.uint8
    assert img.tolist() == [[0, 255], [128, 7]]


def test_p2_parse_with_comments_and_odd_whitespace(tmp_path):
    data = b"P2 # magic\n# a comment line\n 2\t3 # dims\n100\n0 1\n2 3\n4 5"
    img = load_pgm(write(tmp_path / "a.pgm", data))
    assert img.shape == (3, 2)
    assert img.tolist() == [[0, 1], [2, 3], [4, 5]]


def test_p5_parse(tmp_path):
    raster = bytes([0, 255, 128, 7, 9, 10])
    p = write(tmp_path / "a.pgm", b"P5\n# comment\n3 2\n255\n" + raster)
    img = load_pgm(p)
    assert img.shape == (2, 3)
    assert img.reshape(-1).tolist() == [0, 255, 128, 7, 9, 10]


def test_p5_truncated_payload(tmp_path):
    p = write(tmp_path / "a.pgm", b"P5\n4 4\n255\n" + bytes(10))
    with pytest.raises(PgmError, match="unexpected end of pixel data"):
        load_pgm(p)


def test_p2_truncated_values(tmp_path):
    p = write(tmp_path / "a.pgm", b"P2\n2 2\n255\n1 2 3")
    with pytest.raises(PgmError, match="unexpected end of pixel data"):
        load_pgm(p)


def test_maxval_above_255_rejected(tmp_path):
    p = write(tmp_path / "a.pgm", b"P2\n1 1\n4095\n17\n")
    with pytest.raises(PgmError, match="8-bit"):
        load_pgm(p)


def test_color_pnm_rejected(tmp_path):
    p = write(tmp_path / "a.ppm", b"P6\n1 1\n255\n\x01\x02\x03")
    with pytest.raises(PgmError, match="grayscale"):
        load_pgm(p)
    p = write(tmp_path / "b.ppm", b"P3\n1 1\n255\n1 2 3\n")
    with pytest.raises(PgmError, match="grayscale"):
        load_pgm(p)


def test_unknown_magic_rejected(tmp_path):
    p = write(tmp_path / "a.pgm", b"hello there")
    with pytest.raises(PgmError, match="not a PGM"):
        load_pgm(p)


def test_bad_header_fields(tmp_path):
    with pytest.raises(PgmError, match="bad width"):
        load_pgm(write(tmp_path / "a.pgm", b"P2\nx 2\n255\n0\n"))
    with pytest.raises(PgmError, match="invalid dimensions"):
        load_pgm(write(tmp_path / "b.pgm", b"P2\n0 2\n255\n"))
    with pytest.raises(PgmError, match="invalid maxval"):
        load_pgm(write(tmp_path / "c.pgm", b"P2\n1 1\n0\n0\n"))
    with pytest.raises(PgmError, match="truncated header"):
        load_pgm(write(tmp_path / "d.pgm", b"P2\n2"))


def test_p2_value_out_of_range(tmp_path):
    p = write(tmp_path / "a.pgm", b"P2\n2 1\n100\n5 101\n")
    with pytest.raises(PgmError, match="outside"):
        load_pgm(p)


def test_p5_value_above_maxval(tmp_path):
    p = write(tmp_path / "a.pgm", b"P5\n2 1\n100\n" + bytes([5, 200]))
    with pytest.raises(PgmError, match="outside"):
        load_pgm(p)


def test_save_load_round_trip(tmp_path):
    rng = np.random.default_rng(1)
    img = rng.integers(0, 256, size=(37, 23), dtype=np.uint8)
    path = tmp_path / "r.pgm"
    save_pgm(path, img)
    assert np.array_equal(load_pgm(path), img)


def test_save_16_bit_big_endian(tmp_path):
    codes = np.array([[0, 6560], [3280, 255]], dtype=np.int32)
    path = tmp_path / "c.pgm"
    save_pgm(path, codes, maxval=6560)
    data = path.read_bytes()
    assert data.startswith(b"P5\n2 2\n6560\n")
    raster = data.split(b"6560\n", 1)[1]
    assert np.frombuffer(raster, dtype=">u2").tolist() == [0, 6560, 3280, 255]
    # two-byte files are write-only: the loader only accepts 8-bit input
    with pytest.raises(PgmError, match="8-bit"):
        load_pgm(path)


def test_save_validation(tmp_path):
    path = tmp_path / "x.pgm"
    with pytest.raises(ValueError, match="2-D"):
        save_pgm(path, np.zeros(4, dtype=np.uint8))
    with pytest.raises(ValueError, match="outside"):
        save_pgm(path, np.array([[300]]), maxval=255)
    with pytest.raises(ValueError, match="out of range"):
        save_pgm(path, np.array([[1]]), maxval=0)
    with pytest.raises(ValueError, match="out of range"):
        save_pgm(path, np.array([[1]]), maxval=70000)


def test_tile_counts_and_row_major_order():
    img = np.arange(8 * 8, dtype=np.uint8).reshape(8, 8)
    ts = tile(img, 4, source_id="x")
    assert ts.tile_size == 4
    assert len(ts.tiles) == 4
    top = np.hstack([ts.tiles[0], ts.tiles[1]])
    bottom = np.hstack([ts.tiles[2], ts.tiles[3]])
    assert np.array_equal(np.vstack([top, bottom]), img)


def test_tile_identity():
    img = np.arange(64 * 64, dtype=np.int64).reshape(64, 64) % 256
    ts = tile(img.astype(np.uint8), 64)
    assert len(ts.tiles) == 1
    assert np.array_equal(ts.tiles[0], img.astype(np.uint8))


def test_tile_discards_edge_remainder():
    img = np.zeros((64, 130), dtype=np.uint8)
    ts = tile(img, 64)
    assert len(ts.tiles) == 2
    assert all(t.shape == (64, 64) for t in ts.tiles)


def test_tile_512_into_64():
    img = np.zeros((512, 512), dtype=np.uint8)
    assert len(tile(img, 64).tiles) == 64


def test_tiles_are_copies():
    img = np.zeros((8, 8), dtype=np.uint8)
    ts = tile(img, 4)
    img[0, 0] = 9
    assert ts.tiles[0][0, 0] == 0


def test_tile_errors():
    img = np.zeros((10, 10), dtype=np.uint8)
    with pytest.raises(ValueError, match="minimum"):
        tile(img, 2)
    with pytest.raises(ValueError, match="exceeds"):
        tile(img, 11)
    with pytest.raises(ValueError, match="2-D"):
        tile(np.zeros(10, dtype=np.uint8), 3)


def make_dataset(root, layout):
    for cls, names in layout.items():
        d = root / cls
        d.mkdir(parents=True)
        for name in names:
            save_pgm(d / name, np.zeros((8, 8), dtype=np.uint8))


def test_scan_dataset_sorted(tmp_path):
    make_dataset(tmp_path, {"zebra": ["b.pgm", "a.pgm"], "ant": ["x.pgm"]})
    (tmp_path / "empty_dir").mkdir()
    (tmp_path / "ant" / "notes.txt").write_text("ignored")
    classes = scan_dataset(tmp_path)
    assert [label for label, _ in classes] == ["ant", "zebra"]
    assert [p.name for p in classes[1][1]] == ["a.pgm", "b.pgm"]


def test_scan_dataset_errors(tmp_path):
    with pytest.raises(ValueError, match="no classes found"):
        scan_dataset(tmp_path / "missing")
    (tmp_path / "only_files").mkdir()
    with pytest.raises(ValueError, match="no classes found"):
        scan_dataset(tmp_path / "only_files")
