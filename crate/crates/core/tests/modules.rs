use classbound_core::gf::blocks::{cyclic_block_instance, induced_block_group, KernelChoice, Mixing};
use classbound_core::gf::checks::{verify_leme2, verify_lemc4, verify_theorem_c};
use classbound_core::gf::lgroup::five_complement_gl25;
use classbound_core::{Group, DEFAULT_CAP};

#[test]
fn leme2_on_l_times_l() {
    let l = five_complement_gl25().unwrap();
    let inst = cyclic_block_instance(&l, 2, KernelChoice::Full, DEFAULT_CAP).unwrap();
    assert_eq!(inst.group.order(), 18432);
    let r = verify_leme2(&inst, &l, "LxL").unwrap();
    assert!(r.holds, "{r:?}");
    assert!(r.lhs <= 117.0);
    let c = verify_lemc4(&inst, "LxL").unwrap();
    assert!(c.holds, "{c:?}");
}

#[test]
fn theorem_c_full_wreath() {
    let l = five_complement_gl25().unwrap();
    let g = induced_block_group(&l, &[vec![1, 0]], Mixing::Full, DEFAULT_CAP).unwrap();
    let r = verify_theorem_c(&g, &l, "L wr C2").unwrap();
    assert!(r.holds, "{r:?}");
    assert!(r.lhs <= 625.0);
}
