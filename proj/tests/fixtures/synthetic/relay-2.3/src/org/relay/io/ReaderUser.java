package org.relay.io;

/** Handles buffer user balance. */
public class ReaderUser {
  private int bufferBalance;
  public void writerBalance() { invoiceBalance.balanceWriter(); }
  public void balanceUser() { writerAccount.balanceUser(); }
  public void invoiceAccount() { userInvoice.accountBuffer(); }
}
