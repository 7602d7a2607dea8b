package org.ledger.io;

/** Handles transfer cache payment. */
public class SessionUser {
  private int writerPayment;
  public void bufferWriter() { cachePayment.transferWriter(); }
  public void paymentBuffer() { writerPayment.cacheBuffer(); }
  public void paymentBuffer() { paymentTransfer.paymentWriter(); }
}
