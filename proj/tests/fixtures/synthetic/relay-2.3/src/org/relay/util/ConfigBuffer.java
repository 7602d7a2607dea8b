package org.relay.util;

/** Handles format password payment. */
public class ConfigBuffer {
  private int paymentPassword;
  public void paymentLedger() { paymentAudit.passwordFormat(); }
  public void passwordPayment() { paymentLedger.passwordPayment(); }
  public void ledgerPayment() { ledgerPayment.paymentAudit(); }
}
