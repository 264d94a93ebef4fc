use rspace::product::{
    delta, encode_product, lambda, parse_product, product_in_o, product_le_fin, product_pool, proj0, proj0_gen,
    BitStream, ProductAR, ProductGen, ProductSpace,
};
use rspace::space::{le, one_step_exts};
use rspace::spaces::pools::{evens, naturals, standard_pool};
use rspace::spaces::vector::{BlockVector, Field};
use rspace::{ARElem, Error, Payload, Space, WSpace};

const GF3: Space = Space::Vector { field: Field::Gf(3) };

fn pa(a: &[u32], bits: &[u8]) -> ProductAR {
    ProductAR { a: ARElem::set(a), bits: bits.iter().map(|&b| b == 1).collect() }
}

fn v3(pairs: &[(u32, i64)]) -> BlockVector {
    BlockVector::from_ints(Field::Gf(3), pairs)
}

fn vecs(vs: &[BlockVector]) -> ARElem {
    ARElem::new(GF3, Payload::Vectors(vs.to_vec()))
}

#[test]
fn le_fin_ignores_bits() {
    let x = pa(&[0, 2], &[0, 1]);
    let y = pa(&[0, 2], &[1, 0]);
    assert!(product_le_fin(&x, &y) && product_le_fin(&y, &x));
    assert_ne!(x, y);
    assert!(product_le_fin(&pa(&[0], &[1]), &pa(&[0, 2], &[0, 0])));
    assert!(!product_le_fin(&pa(&[1], &[1]), &pa(&[0, 2], &[0, 0])));
}

#[test]
#[should_panic]
fn le_fin_mixed_spaces_panics() {
    let y = ProductAR { a: ARElem::empty(Space::Singleton), bits: vec![] };
    product_le_fin(&pa(&[0], &[1]), &y);
}

#[test]
fn projection() {
    assert_eq!(proj0(&pa(&[0, 2], &[1, 0])), &ARElem::set(&[0, 2]));
    let pool = standard_pool(Space::Ellentuck, 6, 7);
    let pp = product_pool(&pool);
    for g in &pool {
        assert!(pp.iter().any(|p| proj0_gen(p) == g && p.u == BitStream::zeros()));
    }
    let s = ProductSpace::new(Space::Ellentuck);
    let small = ProductGen::new(evens(8), BitStream { prefix: vec![true, false, true], tail: true });
    let big = ProductGen::new(naturals(8), BitStream::zeros());
    assert!(le(&s, &small, &big, 4));
    assert!(le(&Space::Ellentuck, proj0_gen(&small), proj0_gen(&big), 4));
    assert!(!le(&s, &big, &small, 4));
}

#[test]
fn approximations_carry_the_stream() {
    let s = ProductSpace::new(Space::Ellentuck);
    let g = ProductGen::new(evens(8), BitStream { prefix: vec![true], tail: false });
    let x = s.approx(&g, 3);
    assert_eq!(x, pa(&[0, 2, 4], &[1, 0, 0]));
    assert!(s.is_approximation(&x));
    assert!(!s.is_approximation(&pa(&[0, 2], &[1])));
    let exts = one_step_exts(&s, &pa(&[0], &[1]), &g, 3);
    assert_eq!(exts.len(), 4);
    assert!(exts.iter().all(|c| c.bits.len() == 2 && c.bits[0]));
}

#[test]
fn in_o_is_the_last_bit() {
    assert!(product_in_o(&pa(&[0, 2], &[0, 1])));
    assert!(!product_in_o(&pa(&[0, 2], &[1, 0])));
    assert!(!product_in_o(&pa(&[], &[])));
}

#[test]
fn delta_on_gf3() {
    assert!(delta(&v3(&[(1, 1), (4, 1)])).unwrap());
    assert!(!delta(&v3(&[(1, 2), (4, 1)])).unwrap());
    assert!(!delta(&v3(&[(1, 1)])).unwrap());
    let two = BlockVector::from_ints(Field::Gf(2), &[(1, 1), (4, 1)]);
    assert!(matches!(delta(&two), Err(Error::WrongSpace(_))));
}

#[test]
fn lambda_display() {
    let xs = [v3(&[(0, 1)]), v3(&[(1, 1), (2, 1)]), v3(&[(3, 2)]), v3(&[(4, 2), (5, 1)])];
    let out = lambda(&ARElem::empty(GF3), &[], &vecs(&xs)).unwrap();
    assert_eq!(out.a, vecs(&[xs[0].clone(), xs[2].clone()]));
    assert_eq!(out.bits, vec![delta(&xs[1]).unwrap(), delta(&xs[3]).unwrap()]);
    assert_eq!(out.bits, vec![true, false]);
    assert_eq!(out.bits.len(), GF3.lh(&out.a));
}

#[test]
fn lambda_prefix_monotone() {
    let xs: Vec<BlockVector> = (0..7u32).map(|i| v3(&[(2 * i, 1 + (i as i64 % 2)), (2 * i + 1, 1)])).collect();
    let a = vecs(&xs[..1]);
    for n in 1..=xs.len() {
        for m in n..=xs.len() {
            let short = lambda(&a, &[true], &vecs(&xs[..n])).unwrap();
            let long = lambda(&a, &[true], &vecs(&xs[..m])).unwrap();
            let s = ProductSpace::new(GF3);
            assert_eq!(s.truncate(&long, s.lh(&short)), short);
            assert_eq!(long.bits.len(), GF3.lh(&long.a));
        }
    }
}

#[test]
fn lambda_rejects_bad_input() {
    let xs = [v3(&[(0, 1)]), v3(&[(1, 1)])];
    let two = Space::Vector { field: Field::Gf(2) };
    assert!(matches!(lambda(&ARElem::empty(two), &[], &ARElem::empty(two)), Err(Error::WrongSpace(_))));
    assert!(matches!(lambda(&ARElem::set(&[1]), &[true], &ARElem::set(&[1, 2])), Err(Error::WrongSpace(_))));
    assert!(lambda(&vecs(&xs[..1]), &[], &vecs(&xs)).is_err());
    assert!(lambda(&vecs(&xs[1..]), &[true], &vecs(&xs)).is_err());
}

#[test]
fn text_round_trip() {
    let x = pa(&[0, 2], &[1, 0]);
    assert_eq!(encode_product(&x), "(ellentuck:{0,2},10)");
    assert_eq!(parse_product("(ellentuck:{0,2},10)").unwrap(), x);
    let y = ProductAR { a: vecs(&[v3(&[(0, 1), (1, 2)])]), bits: vec![true] };
    assert_eq!(parse_product(&encode_product(&y)).unwrap(), y);
    assert!(parse_product("(ellentuck:{0,2},1)").is_err());
    assert!(parse_product("(ellentuck:{0,2},1x)").is_err());
    assert!(parse_product("ellentuck:{0,2}").is_err());
}
