use jacaranda_web::{chi_text, line_text, ones_proportion, tiling_picture, tree_picture};

#[test]
fn lines_and_words() {
    assert_eq!(line_text("bbab", 0, 2).unwrap(), "0010");
    assert_eq!(line_text("tm", 0, 2).unwrap(), "1111");
    assert_eq!(chi_text("10", 1).unwrap(), "0010");
    assert!(chi_text("010", 1).is_err());
    assert!(chi_text("10", 5).is_err());
    assert_eq!(ones_proportion(4), "8463/65536");
}

#[test]
fn pictures() {
    let tree = tree_picture("bbab", 0, 4, 400).unwrap();
    assert_eq!(tree.matches("class=\"node\"").count(), 31);
    assert!(tree_picture("nope", 0, 4, 400).is_err());
    let disk = tiling_picture("bbab", 0, 3, 64).unwrap();
    assert!(disk.starts_with("<svg"));
    assert!(tiling_picture("bbab", 0, 11, 64).is_err());
}
