// Generated listing of the files under data/.

pub(super) static FILES: &[(&str, &str)] = &[
    ("bounds.txt", include_str!("../../data/bounds.txt")),
    ("perm/A4.txt", include_str!("../../data/perm/A4.txt")),
    ("perm/A5.txt", include_str!("../../data/perm/A5.txt")),
    ("perm/L2_7.txt", include_str!("../../data/perm/L2_7.txt")),
    ("perm/M11.txt", include_str!("../../data/perm/M11.txt")),
    ("perm/M12.txt", include_str!("../../data/perm/M12.txt")),
    ("perm/S3.txt", include_str!("../../data/perm/S3.txt")),
    ("perm/S4.txt", include_str!("../../data/perm/S4.txt")),
    ("perm/S5.txt", include_str!("../../data/perm/S5.txt")),
    ("restrict/h12.json", include_str!("../../data/restrict/h12.json")),
    ("restrict/h6.json", include_str!("../../data/restrict/h6.json")),
    ("restrict/h7.json", include_str!("../../data/restrict/h7.json")),
    ("subgroups/A4/C3.json", include_str!("../../data/subgroups/A4/C3.json")),
    ("subgroups/A4/V4.json", include_str!("../../data/subgroups/A4/V4.json")),
    ("subgroups/A5/A4.json", include_str!("../../data/subgroups/A5/A4.json")),
    ("subgroups/A5/C5.json", include_str!("../../data/subgroups/A5/C5.json")),
    ("subgroups/A5/D10.json", include_str!("../../data/subgroups/A5/D10.json")),
    ("subgroups/A5/S3.json", include_str!("../../data/subgroups/A5/S3.json")),
    ("subgroups/L2_7/7_3.json", include_str!("../../data/subgroups/L2_7/7_3.json")),
    ("subgroups/L2_7/S4.json", include_str!("../../data/subgroups/L2_7/S4.json")),
    ("subgroups/L2_7/S4_.json", include_str!("../../data/subgroups/L2_7/S4_.json")),
    ("subgroups/M11/2_S4.json", include_str!("../../data/subgroups/M11/2_S4.json")),
    ("subgroups/M11/L211.json", include_str!("../../data/subgroups/M11/L211.json")),
    ("subgroups/M11/M10.json", include_str!("../../data/subgroups/M11/M10.json")),
    ("subgroups/M11/M9_2.json", include_str!("../../data/subgroups/M11/M9_2.json")),
    ("subgroups/M11/S5.json", include_str!("../../data/subgroups/M11/S5.json")),
    ("subgroups/M12/2xS5.json", include_str!("../../data/subgroups/M12/2xS5.json")),
    ("subgroups/M12/3_2_2S4a.json", include_str!("../../data/subgroups/M12/3_2_2S4a.json")),
    ("subgroups/M12/3_2_2S4b.json", include_str!("../../data/subgroups/M12/3_2_2S4b.json")),
    ("subgroups/M12/4_2_D12.json", include_str!("../../data/subgroups/M12/4_2_D12.json")),
    ("subgroups/M12/A4xS3.json", include_str!("../../data/subgroups/M12/A4xS3.json")),
    ("subgroups/M12/A6_2_2a.json", include_str!("../../data/subgroups/M12/A6_2_2a.json")),
    ("subgroups/M12/A6_2_2b.json", include_str!("../../data/subgroups/M12/A6_2_2b.json")),
    ("subgroups/M12/L211.json", include_str!("../../data/subgroups/M12/L211.json")),
    ("subgroups/M12/M11a.json", include_str!("../../data/subgroups/M12/M11a.json")),
    ("subgroups/M12/M11b.json", include_str!("../../data/subgroups/M12/M11b.json")),
    ("subgroups/M12/M8_S4.json", include_str!("../../data/subgroups/M12/M8_S4.json")),
    ("subgroups/S3/C2.json", include_str!("../../data/subgroups/S3/C2.json")),
    ("subgroups/S3/C3.json", include_str!("../../data/subgroups/S3/C3.json")),
    ("subgroups/S4/A4.json", include_str!("../../data/subgroups/S4/A4.json")),
    ("subgroups/S4/C3.json", include_str!("../../data/subgroups/S4/C3.json")),
    ("subgroups/S4/D8.json", include_str!("../../data/subgroups/S4/D8.json")),
    ("subgroups/S4/S3.json", include_str!("../../data/subgroups/S4/S3.json")),
    ("subgroups/S5/5_4.json", include_str!("../../data/subgroups/S5/5_4.json")),
    ("subgroups/S5/A5.json", include_str!("../../data/subgroups/S5/A5.json")),
    ("subgroups/S5/S3xS2.json", include_str!("../../data/subgroups/S5/S3xS2.json")),
    ("subgroups/S5/S4.json", include_str!("../../data/subgroups/S5/S4.json")),
    ("tables/A4.json", include_str!("../../data/tables/A4.json")),
    ("tables/A5.json", include_str!("../../data/tables/A5.json")),
    ("tables/L2_7.json", include_str!("../../data/tables/L2_7.json")),
    ("tables/M11.json", include_str!("../../data/tables/M11.json")),
    ("tables/M12.json", include_str!("../../data/tables/M12.json")),
    ("tables/S3.json", include_str!("../../data/tables/S3.json")),
    ("tables/S4.json", include_str!("../../data/tables/S4.json")),
    ("tables/S5.json", include_str!("../../data/tables/S5.json")),
];
