use rosphere::green::Engine;

fn main() {
    let mut e = Engine::c4();
    let us = e.u_sigma();
    let us2 = e.multiply(&us, &us);
    println!("us^2 (us*us) = {:?}", us2.coords);
    let us3_a = e.multiply(&us2, &us);
    let us3_b = e.multiply(&us, &us2);
    println!("us^3: (us^2)*us = {:?}, us*(us^2) = {:?}", us3_a.coords, us3_b.coords);
    let us4_a = e.multiply(&us3_a, &us);
    let us4_b = e.multiply(&us, &us3_a);
    let us4_c = e.multiply(&us2, &us2);
    println!("us^4: us3*us = {:?}, us*us3 = {:?}, us2*us2 = {:?}",
        us4_a.coords, us4_b.coords, us4_c.coords);
    // same probe for u_lambda at top level (even degrees, no signs expected)
    let ul = e.u_lambda();
    let ul2 = e.multiply(&ul, &ul);
    let ul3_a = e.multiply(&ul2, &ul);
    let ul4_a = e.multiply(&ul3_a, &ul);
    let ul4_c = e.multiply(&ul2, &ul2);
    println!("ul^4: (ul^3)*ul = {:?}, ul2*ul2 = {:?}", ul4_a.coords, ul4_c.coords);
    // and a_sigma powers (torsion; immune)
    // bottom level powers of res(us)
    let usb = e.res(&us, 0);
    let usb2 = e.multiply(&usb, &usb);
    let usb4_a = {
        let t = e.multiply(&usb2, &usb);
        e.multiply(&t, &usb)
    };
    let usb4_c = e.multiply(&usb2, &usb2);
    println!("usbar^4: left = {:?}, paired = {:?}", usb4_a.coords, usb4_c.coords);
}
