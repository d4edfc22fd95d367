macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(cone, "cone.rs");
example!(satellite_quadrics, "satellite_quadrics.rs");
example!(duality, "duality.rs");
example!(two_satellites, "two_satellites.rs");
example!(robot_vacuum, "robot_vacuum.rs");
example!(ocean_raft, "ocean_raft.rs");
example!(redundant_satellites, "redundant_satellites.rs");
example!(scenario_files, "scenario_files.rs");
