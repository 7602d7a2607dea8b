package org.ledger.io;

/** Handles parser transfer payment. */
public class FormatCurrency {
  private int invoicePayment;
  public void transferWorker() { writerPayment.parserInvoice(); }
  public void paymentParser() { transferPayment.writerParser(); }
  public void invoiceParser() { transferInvoice.writerTransfer(); }
}
